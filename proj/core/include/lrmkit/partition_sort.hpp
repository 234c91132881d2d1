#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <lrmkit/bit_string.hpp>
#include <lrmkit/lrm.hpp>

namespace lrmkit {

enum class partition_kind { runs, strict_runs, lrm };

// Cover of positions 1..n by increasing subsequences, listed by first position.
struct partition {
    partition_kind kind = partition_kind::runs;
    std::vector<std::vector<std::size_t>> subsequences;
    std::vector<std::uint64_t> lengths;
};

// H = Σ (nᵢ/n)·lg(n/nᵢ); throws std::invalid_argument on empty or zero parts.
double entropy(const std::vector<std::uint64_t>& lengths);

// maximal weakly (plain) or rank-consecutive (strict) ascending stretches;
// uncounted reads
partition runs_partition(const input_array& a, bool strict);

// Repeatedly peels a deepest root-to-leaf path (leftmost among equally deep
// leaves), recursing on the subtrees that fall off; exactly leaf_count()
// subsequences, zero counted comparisons — the depth maxima come from a
// range-minimum index over the negated depth array.
partition lrm_partition(const lrm_tree& t, std::uint64_t* internal_ops = nullptr);

// Binary merge schedule shaped like a Huffman code over the part lengths.
// Ties pop the smallest weight with the smallest creation index; the first of
// the two pops becomes the left child.
struct merge_tree {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    struct merge_node {
        std::size_t left;
        std::size_t right;
    };

    std::size_t leaf_count = 0;
    std::vector<merge_node> internals;     // creation order; node id = leaf_count + index
    std::vector<std::size_t> parent;       // per node id; npos at the root
    std::vector<std::uint64_t> weight;     // per node id
    std::vector<std::uint32_t> leaf_depth; // per leaf
    std::uint64_t weighted_path_length = 0;
    std::uint32_t max_leaf_depth = 0;

    std::size_t node_count() const noexcept { return leaf_count + internals.size(); }
    std::size_t root() const noexcept { return node_count() - 1; }
    bool is_leaf(std::size_t id) const noexcept { return id < leaf_count; }
};

merge_tree huffman_merge_plan(const std::vector<std::uint64_t>& lengths,
                              std::uint64_t* internal_ops = nullptr);

struct merge_result {
    std::vector<std::size_t> positions;  // all of 1..n in ascending value order
    std::uint64_t comparisons = 0;       // ≤ Σ internal (left+right−1) ≤ n(H+1)
    std::uint64_t internal_ops = 0;
    std::vector<bit_string> node_bits;   // per internal, when recorded: 0 = left origin
};

// Merges the partition along the plan; counted comparisons land on a's
// counter and are also reported. Malformed partitions (wrong coverage,
// non-increasing subsequences, weights that disagree with the plan) throw
// structure_error.
merge_result merge_by_plan(const input_array& a, const partition& p,
                           const merge_tree& plan, bool record_bits);

struct sort_stats {
    std::size_t n = 0;
    std::size_t parts = 0;
    double h_partition = 0.0;
    std::uint64_t cmp_build = 0;
    std::uint64_t cmp_merge = 0;
    std::uint64_t cmp_total = 0;
    std::uint64_t internal_ops = 0;
    std::uint32_t max_leaf_depth = 0;
};

// tree build (≤ 2n) → path partition (0) → merge (≤ n(1+H)); total ≤ n(3+H)
std::pair<std::vector<std::int64_t>, sort_stats> sort_lrm(const input_array& a);

// same merge machinery over the plain run partition; run detection costs the
// n−1 counted comparisons it actually performs
std::pair<std::vector<std::int64_t>, sort_stats> sort_runs_baseline(const input_array& a);

struct measure_report {
    std::size_t n = 0;
    std::uint64_t rho = 0;
    std::uint64_t rho_strict = 0;
    std::uint64_t n_sus = 0;  // greedy patience cover = longest strictly decreasing subsequence
    double h_runs = 0.0;
    double h_lrm = 0.0;
};

// works on a private copy; the caller's comparison counter stays untouched
measure_report measures(const input_array& a);

} // namespace lrmkit
