#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <lrmkit/bitseq.hpp>
#include <lrmkit/bp_forest.hpp>
#include <lrmkit/lrm.hpp>

namespace lrmkit {

struct rmq_size_report {
    std::uint64_t payload_bits = 0;    // parens, or head class+offset plus heads-tree parens
    std::uint64_t directory_bits = 0;  // everything sublinear
    std::uint64_t total_bits = 0;
};

// Non-systematic: answers range-minimum positions from the tree alone, never
// touching the source array. 2(n+1) paren bits plus directories.
class plain_rmq_index {
public:
    explicit plain_rmq_index(const input_array& a)
        : m_tree(build_lrm_tree(a).bp()) {}

    // deserialization path; expects a single-rooted tree over nodes 0..n
    explicit plain_rmq_index(bp_forest tree);

    std::size_t size() const noexcept { return m_tree.size() - 1; }

    // position of the leftmost minimum of the source range [i..j]
    std::size_t query(std::size_t i, std::size_t j) const;

    const bp_forest& tree() const noexcept { return m_tree; }
    rmq_size_report size_report() const;

private:
    bp_forest m_tree;
};

// Non-systematic: compressed strict-run heads plus a plain index over the
// heads array. Still zero accesses to the source array per query.
class strict_runs_rmq_index {
public:
    explicit strict_runs_rmq_index(const input_array& a);

    // deserialization path: raw head bits plus the heads-array tree
    strict_runs_rmq_index(const bit_string& head_bits, bp_forest heads_tree);

    std::size_t size() const noexcept { return m_heads.size(); }
    std::size_t run_count() const noexcept { return m_heads.ones(); }

    std::size_t query(std::size_t i, std::size_t j) const;

    const compressed_bit_vector& heads() const noexcept { return m_heads; }
    const plain_rmq_index& heads_index() const noexcept { return m_heads_index; }
    rmq_size_report size_report() const;

private:
    strict_runs_rmq_index(const bit_string& head_bits, const input_array& a);

    compressed_bit_vector m_heads;
    plain_rmq_index m_heads_index;
};

// Systematic: same layout over general run heads, but queries need read
// access to the array given at build time; at most one counted comparison per
// query, none when the range sits inside a single run.
class runs_rmq_index {
public:
    explicit runs_rmq_index(const input_array& a);
    runs_rmq_index(const bit_string& head_bits, bp_forest heads_tree);

    std::size_t size() const noexcept { return m_heads.size(); }
    std::size_t run_count() const noexcept { return m_heads.ones(); }

    std::size_t query(const input_array& a, std::size_t i, std::size_t j) const;

    const compressed_bit_vector& heads() const noexcept { return m_heads; }
    const plain_rmq_index& heads_index() const noexcept { return m_heads_index; }
    rmq_size_report size_report() const;

private:
    runs_rmq_index(const bit_string& head_bits, const input_array& a);

    compressed_bit_vector m_heads;
    plain_rmq_index m_heads_index;
};

struct tree_entropy_report {
    double bits = 0.0;  // lg(multinomial(N; degree histogram) / N)
    std::vector<std::uint64_t> degree_histogram;  // index = out-degree, all N nodes
    std::uint64_t node_count = 0;                 // N = n + 1, artificial root included
};

tree_entropy_report tree_entropy(const lrm_tree& t);

inline double tree_entropy_bits(const lrm_tree& t) { return tree_entropy(t).bits; }

} // namespace lrmkit
