#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <lrmkit/bit_string.hpp>
#include <lrmkit/bitseq.hpp>
#include <lrmkit/bp_forest.hpp>
#include <lrmkit/partition_sort.hpp>
#include <lrmkit/rmq.hpp>

namespace lrmkit {

struct perm_size_report {
    std::uint64_t forest_paren_bits = 0; // 2(n + parts), exact
    std::uint64_t forest_nav_bits = 0;
    std::uint64_t merge_payload_bits = 0; // == plan weighted path length
    std::uint64_t merge_directory_bits = 0;
    std::uint64_t merge_shape_bits = 0; // preorder shape tokens, O(parts · lg n)
    std::uint64_t lrm_bits = 0;         // 0 unless the tree was retained
    std::uint64_t total_bits = 0;
};

// Compressed permutation. The increasing subsequences peeled off the
// left-to-right-minima tree become internal nodes of a parenthesis forest
// whose leaves are the positions 1..n in order, so position -> (subsequence,
// offset) is leaf/parent navigation; a Huffman-shaped merge of the
// subsequences records at every internal merge node which child each element
// of its output came from, so offsets walk up (select) for pi(i) and down
// (rank) for the inverse. The root offset IS the value: merging the
// increasing cover of a permutation yields 1..n.
class perm_code {
public:
    struct part_ref {
        std::size_t part;   // subsequence id, 1..parts, in first-position order
        std::size_t offset; // 1-based rank inside the subsequence
    };

    perm_code() = default;

    // with_psv_rmq retains the minima tree (2(n+1) parens + directories) to
    // serve psv_query/rmq_query; duplicates or out-of-range entries raise
    // std::invalid_argument naming the offending position.
    static perm_code encode(const std::vector<std::int64_t>& pi, bool with_psv_rmq = false);

    // deserialization path; cross-checks forest leaf weights, plan weights,
    // and per-node bit lengths/ones, raising structure_error on mismatch
    perm_code(bp_forest forest, merge_tree plan, std::vector<bit_string> node_bits,
              std::optional<bp_forest> lrm_tree_bp);

    std::size_t size() const noexcept { return m_n; }
    std::size_t parts() const noexcept { return m_rho; }
    bool has_tree() const noexcept { return m_lrm.has_value(); }

    part_ref map(std::size_t i) const;
    std::size_t unmap(std::size_t part, std::size_t offset) const;

    std::size_t apply(std::size_t i) const;   // pi(i)
    std::size_t inverse(std::size_t v) const; // pi^{-1}(v)

    // previous position holding a smaller value, 0 when none; needs the
    // retained tree (capability_error otherwise)
    std::size_t psv_query(std::size_t i) const;
    // leftmost minimum position of pi[i..j]; same capability requirement
    std::size_t rmq_query(std::size_t i, std::size_t j) const;

    const bp_forest& forest() const noexcept { return m_forest; }
    const merge_tree& plan() const noexcept { return m_plan; }
    const std::vector<plain_bit_vector>& node_bits() const noexcept { return m_node_bits; }
    const std::optional<plain_rmq_index>& tree_index() const noexcept { return m_lrm; }

    perm_size_report size_report() const;

private:
    void check_position(std::size_t i, const char* who) const;

    std::size_t m_n = 0;
    std::size_t m_rho = 0;
    bp_forest m_forest;
    merge_tree m_plan;
    std::vector<plain_bit_vector> m_node_bits; // per internal, creation order
    std::optional<plain_rmq_index> m_lrm;
};

} // namespace lrmkit
