#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lrmkit/bit_string.hpp"
#include "lrmkit/bitseq.hpp"

namespace lrmkit {

struct bp_size_report {
    std::uint64_t paren_bits = 0; // 2 bits per node
    std::uint64_t nav_bits = 0;   // directories, excess blocks, samples
    std::uint64_t total_bits = 0;
};

// Ordered forest stored as a balanced parenthesis string ('(' = 1), with
// the auxiliary indexes needed to navigate it:
//
//   * rank/select over opens, mapping preorder node ids to positions;
//   * rank/select over the patterns "()" (leaves) and "((" (internal
//     nodes), computed from the paren words on the fly so only the
//     counting directories are stored;
//   * a block excess index (256 parens per block, min/max excess plus the
//     number of leaf closes at the block minimum) with a segment tree on
//     top, driving matching, enclosing, and range-minimum searches.
//
// Node ids are preorder ranks, 0-based. A multi-root forest is wrapped in
// one virtual parenthesis pair internally; the wrapper is not a node and
// serialized output omits it.
class bp_forest {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    bp_forest() = default;

    // parents[v] must be npos (root) or an id on the rightmost path so far,
    // i.e. ids are a preorder numbering — which they are for anything built
    // in position order. Anything else raises structure_error.
    static bp_forest from_parents(const std::vector<std::size_t>& parents);

    // Unwrapped forest parenthesis bits. Raises structure_error unless
    // every prefix has at least as many opens as closes and totals match.
    static bp_forest from_parens(const bit_string& parens);

    std::size_t size() const noexcept { return m_n; }
    std::size_t leaf_count() const noexcept { return m_leaf.count; }
    std::size_t internal_count() const noexcept { return m_int.count; }

    bit_string to_parens() const;
    std::string to_text() const;

    bool is_leaf(std::size_t v) const;
    std::size_t parent(std::size_t v) const; // npos for roots

    // Deepest common ancestor, or npos when u and v hang off different
    // roots. lca(v, v) = v.
    std::size_t lca(std::size_t u, std::size_t v) const;

    // The child of a whose subtree contains v; a must be a proper
    // ancestor of v. child_toward(parent(v), v) = v.
    std::size_t child_toward(std::size_t a, std::size_t v) const;

    std::size_t leaf_rank(std::size_t v) const;     // leaves with preorder <= v
    std::size_t leaf_select(std::size_t k) const;   // k-th leaf, 1-based
    std::size_t internal_rank(std::size_t v) const;
    std::size_t internal_select(std::size_t k) const;

    // Among the children of v's parent, how many to the left of v are
    // leaves. Roots count preceding roots.
    std::size_t leaf_children_left_of(std::size_t v) const;
    // The p-th (1-based) child of u that is a leaf.
    std::size_t leaf_child_select(std::size_t u, std::size_t p) const;
    std::size_t leaf_child_count(std::size_t u) const;

    std::vector<std::size_t> to_parents() const;
    bp_size_report size_report() const;

private:
    // Counting directory over a pattern stream derived from the paren
    // words; the stream itself is never materialized.
    struct pattern_dir {
        std::vector<std::uint64_t> super;
        std::vector<std::uint16_t> block;
        std::vector<std::uint32_t> samples;
        std::uint64_t count = 0;
    };

    struct seg_node {
        std::int32_t mn;
        std::int32_t mx;
        std::uint32_t cnt; // leaf closes at mn within the span
    };

    void init(bit_string wrapped);
    std::uint64_t pattern_word(std::size_t w, bool both_open) const noexcept;
    void build_pattern_dir(pattern_dir& dir, bool both_open);
    std::size_t pattern_rank(const pattern_dir& dir, bool both_open, std::size_t prefix) const;
    std::size_t pattern_select(const pattern_dir& dir, bool both_open, std::size_t k) const;

    bool open_at(std::size_t pos) const noexcept;      // 1-based paren position
    std::int64_t excess(std::size_t pos) const;        // after pos parens
    bool leaf_close_at(std::size_t pos) const noexcept;

    std::size_t open_of(std::size_t v) const;          // node id -> paren position
    std::size_t node_at(std::size_t open_pos) const;
    void check_node(std::size_t v, const char* who) const;

    std::size_t find_close(std::size_t open_pos) const;
    std::size_t enclose_open(std::size_t open_pos) const;
    // Smallest position > from with the given excess, or npos.
    std::size_t fwd_search(std::size_t from, std::int64_t target) const;
    // Largest position < from with the given excess; position 0 counts
    // (excess 0 before everything). npos when absent.
    std::size_t bwd_search(std::size_t from, std::int64_t target) const;

    struct min_cnt {
        std::int64_t mn;
        std::uint64_t cnt;
    };
    min_cnt range_min_leafclose(std::size_t l, std::size_t r) const;
    std::size_t range_rightmost_min(std::size_t l, std::size_t r, std::int64_t mn) const;
    // p-th leaf close with excess mn inside [l, r], or npos.
    std::size_t kth_leafclose_at(std::size_t l, std::size_t r, std::int64_t mn, std::uint64_t p) const;

    // segment tree over excess blocks
    min_cnt seg_query(std::size_t lb, std::size_t rb) const;
    std::size_t seg_first_bracket(std::size_t from_block, std::int64_t target) const;
    std::size_t seg_last_bracket(std::size_t to_block, std::int64_t target) const;
    std::size_t seg_last_min(std::size_t lb, std::size_t rb, std::int64_t mn) const;

    min_cnt scan_min_leafclose(std::size_t l, std::size_t r) const;

    std::size_t m_n = 0;           // real nodes (wrapper excluded)
    plain_bit_vector m_bp;         // wrapped parens with rank/select
    pattern_dir m_leaf;
    pattern_dir m_int;

    std::size_t m_nblocks = 0;
    std::vector<std::int32_t> m_blk_min;
    std::vector<std::int32_t> m_blk_max;
    std::vector<std::uint32_t> m_blk_cnt;
    std::size_t m_seg_base = 0;
    std::vector<seg_node> m_seg;
};

} // namespace lrmkit
