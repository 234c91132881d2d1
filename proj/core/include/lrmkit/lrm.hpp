#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <lrmkit/bit_string.hpp>
#include <lrmkit/bp_forest.hpp>

namespace lrmkit {

// Signed 64-bit array with 1-based positions and an instrumented comparison
// counter. Duplicates rank by (value, position), so every array orders like a
// permutation.
class input_array {
public:
    input_array() = default;
    explicit input_array(std::vector<std::int64_t> values)
        : m_values(std::move(values)) {}

    std::size_t size() const noexcept { return m_values.size(); }

    // uncounted read
    std::int64_t value(std::size_t i) const {
        if (i == 0 || i > m_values.size()) {
            throw std::out_of_range("input_array: position out of range");
        }
        return m_values[i - 1];
    }

    // counted data comparison: (value, position) lexicographic
    bool less(std::size_t i, std::size_t j) const {
        ++m_comparisons;
        const std::int64_t a = value(i);
        const std::int64_t b = value(j);
        return a < b || (a == b && i < j);
    }

    // counts comparisons resolved by the artificial minimum; no value is read
    void charge(std::uint64_t k = 1) const noexcept { m_comparisons += k; }

    std::uint64_t comparisons() const noexcept { return m_comparisons; }
    void reset_comparisons() const noexcept { m_comparisons = 0; }

    const std::vector<std::int64_t>& values() const noexcept { return m_values; }

private:
    std::vector<std::int64_t> m_values;
    mutable std::uint64_t m_comparisons = 0;
};

// Tree over nodes 0..n: node 0 is the artificial minimum, node i is position
// i, and parent(i) is the previous smaller value of i. Children are ordered by
// position, so node ids coincide with preorder ranks.
class lrm_tree {
public:
    lrm_tree(std::vector<std::size_t> parents, std::vector<std::uint32_t> depths)
        : m_parents(std::move(parents)),
          m_depths(std::move(depths)),
          m_bp(bp_forest::from_parents(m_parents)) {}

    // rebuilds parents/depths from a single-rooted forest (deserialization)
    static lrm_tree from_bp(const bp_forest& f);

    std::size_t n() const noexcept { return m_parents.size() - 1; }

    // largest j < i whose value ranks below position i's; 0 = artificial minimum
    std::size_t psv(std::size_t i) const {
        if (i == 0 || i > n()) {
            throw std::out_of_range("lrm_tree: position out of range");
        }
        return m_parents[i];
    }

    const std::vector<std::size_t>& parents() const noexcept { return m_parents; }

    // depth per preorder node; depth(0) = 0, subtree = contiguous interval
    const std::vector<std::uint32_t>& depths() const noexcept { return m_depths; }

    // equals the number of runs of the source array
    std::size_t leaf_count() const noexcept {
        return n() == 0 ? 0 : m_bp.leaf_count();
    }

    const bp_forest& bp() const noexcept { return m_bp; }

private:
    std::vector<std::size_t> m_parents;
    std::vector<std::uint32_t> m_depths;
    bp_forest m_bp;
};

// Rightmost-branch scan; counter grows by one per pop plus one per insert,
// hence ≤ 2n total and exactly n on sorted input.
lrm_tree build_lrm_tree(const input_array& a);

// Bit i−1 set iff position i starts a new run; bit 0 always set; popcount
// equals the run count. strict marks heads of maximal stretches of rank-
// consecutive elements, computed on the (value, position) ranking so the
// notion stays meaningful on arbitrary arrays. Reads are uncounted.
bit_string run_heads(const input_array& a, bool strict);

} // namespace lrmkit
