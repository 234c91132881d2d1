#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include <lrmkit/errors.hpp>
#include <lrmkit/permcode.hpp>

#include "oracles.hpp"

using lrmkit::bit_string;
using lrmkit::bp_forest;
using lrmkit::capability_error;
using lrmkit::merge_tree;
using lrmkit::perm_code;
using lrmkit::structure_error;

namespace {

std::vector<std::int64_t> example_perm() { return {4, 5, 9, 6, 8, 1, 3, 7, 2}; }

// apply/inverse against the array and its inversion, map/unmap as mutual
// inverses, over every position
void check_round_trip(const std::vector<std::int64_t>& pi, const perm_code& c)
{
    const std::size_t n = pi.size();
    REQUIRE(c.size() == n);
    std::vector<std::size_t> inv(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i)
        inv[static_cast<std::size_t>(pi[i - 1])] = i;
    for (std::size_t i = 1; i <= n; ++i) {
        CHECK(c.apply(i) == static_cast<std::size_t>(pi[i - 1]));
        CHECK(c.inverse(i) == inv[i]);
        const perm_code::part_ref loc = c.map(i);
        CHECK(c.unmap(loc.part, loc.offset) == i);
    }
}

perm_code rebuild_from_parts(const perm_code& c)
{
    std::vector<bit_string> raw;
    raw.reserve(c.node_bits().size());
    for (const auto& nb : c.node_bits())
        raw.push_back(nb.bits());
    std::optional<bp_forest> tree;
    if (c.has_tree())
        tree = c.tree_index()->tree();
    return perm_code(c.forest(), c.plan(), std::move(raw), std::move(tree));
}

} // namespace

TEST_CASE("worked example: forest shape, map and unmap")
{
    const perm_code c = perm_code::encode(example_perm());
    CHECK(c.size() == 9);
    CHECK(c.parts() == 4);
    CHECK(c.forest().to_text() == "(()()(())()())(()()())(())");

    CHECK(c.map(3).part == 2);
    CHECK(c.map(3).offset == 1);
    CHECK(c.map(5).part == 1);
    CHECK(c.map(5).offset == 4);
    CHECK(c.map(9).part == 4);
    CHECK(c.map(9).offset == 1);

    CHECK(c.unmap(3, 2) == 7);
    CHECK(c.unmap(1, 1) == 1);
    for (std::size_t i = 1; i <= 9; ++i) {
        const perm_code::part_ref loc = c.map(i);
        CHECK(c.unmap(loc.part, loc.offset) == i);
    }

    CHECK_THROWS_AS(c.map(0), std::out_of_range);
    CHECK_THROWS_AS(c.map(10), std::out_of_range);
    CHECK_THROWS_AS(c.unmap(0, 1), std::out_of_range);
    CHECK_THROWS_AS(c.unmap(5, 1), std::out_of_range);
    CHECK_THROWS_AS(c.unmap(1, 5), std::out_of_range); // first part holds 4
    CHECK_THROWS_AS(c.unmap(2, 2), std::out_of_range); // second is a singleton
}

TEST_CASE("worked example: apply, inverse, and the recorded merge bits")
{
    const std::vector<std::int64_t> pi = example_perm();
    const perm_code c = perm_code::encode(pi);

    CHECK(c.apply(3) == 9);
    CHECK(c.apply(6) == 1);
    CHECK(c.inverse(9) == 3);
    CHECK(c.inverse(2) == 9);
    check_round_trip(pi, c);

    REQUIRE(c.node_bits().size() == 3);
    CHECK(c.node_bits()[0].bits() == bit_string::from_string("10"));
    CHECK(c.node_bits()[1].bits() == bit_string::from_string("10110"));
    CHECK(c.node_bits()[2].bits() == bit_string::from_string("111000101"));

    CHECK_THROWS_AS(c.apply(0), std::out_of_range);
    CHECK_THROWS_AS(c.inverse(10), std::out_of_range);
}

TEST_CASE("worked example: itemized size report")
{
    const perm_code c = perm_code::encode(example_perm());
    const lrmkit::perm_size_report r = c.size_report();

    CHECK(r.forest_paren_bits == 26); // 2(9 + 4)
    CHECK(r.merge_payload_bits == 16);
    CHECK(r.merge_payload_bits == c.plan().weighted_path_length);
    CHECK(c.plan().leaf_depth == std::vector<std::uint32_t>{1, 3, 2, 3});
    CHECK(c.plan().max_leaf_depth == 3);
    CHECK(r.lrm_bits == 0);
    CHECK(r.total_bits == r.forest_paren_bits + r.forest_nav_bits + r.merge_payload_bits +
                              r.merge_directory_bits + r.merge_shape_bits);

    const perm_code cq = perm_code::encode(example_perm(), true);
    const lrmkit::perm_size_report rq = cq.size_report();
    CHECK(rq.lrm_bits >= 20); // 2(n + 1) parens at least
    CHECK(rq.total_bits == r.total_bits + rq.lrm_bits);
}

TEST_CASE("tree queries sit behind the build flag")
{
    const std::vector<std::int64_t> pi = example_perm();
    const perm_code plain = perm_code::encode(pi);
    CHECK_THROWS_AS(plain.psv_query(1), capability_error);
    CHECK_THROWS_AS(plain.rmq_query(1, 2), capability_error);

    const perm_code c = perm_code::encode(pi, true);
    CHECK(c.has_tree());
    CHECK(c.psv_query(9) == 6);
    CHECK(c.psv_query(1) == 0);
    CHECK(c.psv_query(6) == 0);
    CHECK(c.rmq_query(3, 9) == 6);
    CHECK(c.rmq_query(1, 9) == 6);
    CHECK(c.rmq_query(1, 1) == 1);
    for (std::size_t i = 1; i <= 9; ++i)
        CHECK(c.psv_query(i) == oracle::psv(pi, i));
    for (std::size_t i = 1; i <= 9; ++i)
        for (std::size_t j = i; j <= 9; ++j)
            CHECK(c.rmq_query(i, j) == oracle::range_min_pos(pi, i, j));

    CHECK_THROWS_AS(c.psv_query(0), std::out_of_range);
    CHECK_THROWS_AS(c.rmq_query(3, 2), std::out_of_range);
}

TEST_CASE("identity, reversal, and tiny codes")
{
    std::vector<std::int64_t> id(5);
    std::iota(id.begin(), id.end(), 1);
    const perm_code ci = perm_code::encode(id);
    CHECK(ci.parts() == 1);
    CHECK(ci.forest().to_text() == "(()()()()())");
    CHECK(ci.node_bits().empty());
    CHECK(ci.size_report().merge_payload_bits == 0);
    for (std::size_t i = 1; i <= 5; ++i) {
        CHECK(ci.apply(i) == i);
        CHECK(ci.inverse(i) == i);
        CHECK(ci.map(i).part == 1);
        CHECK(ci.map(i).offset == i);
    }

    const perm_code cr = perm_code::encode({4, 3, 2, 1});
    CHECK(cr.parts() == 4);
    CHECK(cr.forest().to_text() == "(())(())(())(())");
    check_round_trip({4, 3, 2, 1}, cr);

    const perm_code c1 = perm_code::encode({1});
    CHECK(c1.apply(1) == 1);
    CHECK(c1.inverse(1) == 1);

    const perm_code c0 = perm_code::encode({});
    CHECK(c0.size() == 0);
    CHECK(c0.parts() == 0);
    CHECK(c0.size_report().forest_paren_bits == 0);
    CHECK_THROWS_AS(c0.apply(1), std::out_of_range);
}

TEST_CASE("encode rejects non-permutations, naming the position")
{
    CHECK_THROWS_WITH_AS(perm_code::encode({1, 2, 2}),
                         "encode: duplicate value at position 3", std::invalid_argument);
    CHECK_THROWS_WITH_AS(perm_code::encode({1, 5, 3}),
                         "encode: value out of range at position 2", std::invalid_argument);
    CHECK_THROWS_WITH_AS(perm_code::encode({0}),
                         "encode: value out of range at position 1", std::invalid_argument);
    CHECK_THROWS_WITH_AS(perm_code::encode({-3, 1}),
                         "encode: value out of range at position 1", std::invalid_argument);
}

TEST_CASE("exhaustive round trips through n = 8")
{
    for (std::size_t n = 0; n <= 8; ++n) {
        std::vector<std::int64_t> pi(n);
        std::iota(pi.begin(), pi.end(), 1);
        do {
            check_round_trip(pi, perm_code::encode(pi));
        } while (std::next_permutation(pi.begin(), pi.end()));
    }
}

TEST_CASE("tree queries match the quadratic oracles exhaustively")
{
    for (std::size_t n = 1; n <= 6; ++n) {
        std::vector<std::int64_t> pi(n);
        std::iota(pi.begin(), pi.end(), 1);
        do {
            const perm_code c = perm_code::encode(pi, true);
            for (std::size_t i = 1; i <= n; ++i) {
                CHECK(c.psv_query(i) == oracle::psv(pi, i));
                for (std::size_t j = i; j <= n; ++j)
                    CHECK(c.rmq_query(i, j) == oracle::range_min_pos(pi, i, j));
            }
        } while (std::next_permutation(pi.begin(), pi.end()));
    }
}

TEST_CASE("random large codes round trip and honor the payload bound")
{
    std::mt19937_64 rng(0xC0DEC0DEuLL);
    for (int round = 0; round < 500; ++round) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng() % 10000);
        std::vector<std::int64_t> pi(n);
        std::iota(pi.begin(), pi.end(), 1);
        std::shuffle(pi.begin(), pi.end(), rng);

        const perm_code c = perm_code::encode(pi, round % 10 == 0);
        check_round_trip(pi, c);

        const std::vector<std::uint64_t> lengths(c.plan().weight.begin(),
                                                 c.plan().weight.begin() +
                                                     static_cast<std::ptrdiff_t>(c.parts()));
        const double h = lrmkit::entropy(lengths);
        const lrmkit::perm_size_report r = c.size_report();
        CHECK(r.merge_payload_bits == c.plan().weighted_path_length);
        CHECK(static_cast<double>(r.merge_payload_bits) <=
              static_cast<double>(n) * (h + 1.0) + 1e-6);
        CHECK(r.forest_paren_bits == 2 * (n + c.parts()));

        if (round % 20 == 0) {
            const perm_code back = rebuild_from_parts(c);
            for (std::size_t i = 1; i <= n; i += 1 + n / 64) {
                CHECK(back.apply(i) == c.apply(i));
                CHECK(back.inverse(i) == c.inverse(i));
            }
        }
    }
}

TEST_CASE("component constructor cross-checks forest, plan, and bits")
{
    const perm_code c = perm_code::encode(example_perm());
    check_round_trip(example_perm(), rebuild_from_parts(c));

    const perm_code cq = perm_code::encode(example_perm(), true);
    check_round_trip(example_perm(), rebuild_from_parts(cq));
    CHECK(rebuild_from_parts(cq).psv_query(9) == 6);

    std::vector<bit_string> raw;
    for (const auto& nb : c.node_bits())
        raw.push_back(nb.bits());

    // one bit sequence short
    std::vector<bit_string> missing(raw.begin(), raw.end() - 1);
    CHECK_THROWS_AS(perm_code(c.forest(), c.plan(), std::move(missing), std::nullopt),
                    structure_error);

    // wrong length
    std::vector<bit_string> longer = raw;
    longer[0] = bit_string::from_string("100");
    CHECK_THROWS_AS(perm_code(c.forest(), c.plan(), std::move(longer), std::nullopt),
                    structure_error);

    // right length, wrong population — a flipped origin bit
    std::vector<bit_string> flipped = raw;
    flipped[0] = bit_string::from_string("00");
    CHECK_THROWS_AS(perm_code(c.forest(), c.plan(), std::move(flipped), std::nullopt),
                    structure_error);

    // plan taken from a different permutation
    std::vector<std::int64_t> id(9);
    std::iota(id.begin(), id.end(), 1);
    const perm_code ci = perm_code::encode(id);
    std::vector<bit_string> raw2 = raw;
    CHECK_THROWS_AS(perm_code(c.forest(), ci.plan(), std::move(raw2), std::nullopt),
                    structure_error);

    // retained tree for the wrong n
    const lrmkit::input_array small({1, 2, 3});
    std::vector<bit_string> raw3 = raw;
    CHECK_THROWS_AS(perm_code(c.forest(), c.plan(), std::move(raw3),
                              lrmkit::build_lrm_tree(small).bp()),
                    structure_error);

    // forest whose leaves are not all covered by subsequence nodes
    const bp_forest stray = bp_forest::from_parens(bit_string::from_string("10110100"));
    merge_tree one;
    one.leaf_count = 1;
    one.weight = {1};
    one.parent = {merge_tree::npos};
    CHECK_THROWS_AS(perm_code(stray, one, {}, std::nullopt), structure_error);
}
