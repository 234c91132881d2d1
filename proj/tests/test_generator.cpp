#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <lrmkit/generator.hpp>
#include <lrmkit/lrm.hpp>

#include "oracles.hpp"

using lrmkit::generate_permutation;
using lrmkit::input_array;

namespace {

std::size_t run_count(const std::vector<std::int64_t>& v)
{
    const lrmkit::bit_string heads = lrmkit::run_heads(input_array(v), false);
    return oracle::rank1(heads, heads.size());
}

bool is_permutation_of_n(std::vector<std::int64_t> v)
{
    std::sort(v.begin(), v.end());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != static_cast<std::int64_t>(i + 1))
            return false;
    return true;
}

} // namespace

TEST_CASE("achieved run count always equals the request")
{
    for (const std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{9},
                                std::size_t{100}, std::size_t{1000}}) {
        for (const std::size_t runs : {std::size_t{1}, std::size_t{2}, n / 2, n - 1, n}) {
            if (runs < 1 || runs > n)
                continue;
            for (const std::uint64_t seed : {0ULL, 7ULL, 42ULL}) {
                const std::vector<std::int64_t> v = generate_permutation(n, runs, seed);
                REQUIRE(v.size() == n);
                CHECK(is_permutation_of_n(v));
                CHECK(run_count(v) == runs);
            }
        }
    }
}

TEST_CASE("single run is the identity, n runs the reversal")
{
    for (const std::uint64_t seed : {1ULL, 99ULL}) {
        const std::vector<std::int64_t> one = generate_permutation(50, 1, seed);
        const std::vector<std::int64_t> all = generate_permutation(50, 50, seed);
        for (std::size_t i = 0; i < 50; ++i) {
            CHECK(one[i] == static_cast<std::int64_t>(i + 1));
            CHECK(all[i] == static_cast<std::int64_t>(50 - i));
        }
    }
}

TEST_CASE("deterministic under seed, and the stream is pinned")
{
    CHECK(generate_permutation(1000, 37, 123) == generate_permutation(1000, 37, 123));
    CHECK(generate_permutation(1000, 37, 123) != generate_permutation(1000, 37, 124));

    // pins the generator's draw pattern so files reproduce bit-for-bit
    const std::vector<std::int64_t> want = {9, 5, 6, 7, 8, 3, 4, 1, 2};
    CHECK(generate_permutation(9, 4, 42) == want);
}

TEST_CASE("rejects run counts outside [1, n]")
{
    CHECK_THROWS_AS(generate_permutation(5, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_permutation(5, 6, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_permutation(0, 1, 1), std::invalid_argument);
}
