#pragma once

// Reference implementations the tests compare against: quadratic scans and
// pointer-chasing tree walks, written for obviousness rather than speed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lrmkit/bit_string.hpp"

namespace oracle {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

inline std::size_t rank1(const lrmkit::bit_string& b, std::size_t i)
{
    std::size_t r = 0;
    for (std::size_t p = 0; p < i; ++p)
        r += b.get(p) ? 1 : 0;
    return r;
}

inline std::size_t select(const lrmkit::bit_string& b, std::size_t k, bool value)
{
    std::size_t seen = 0;
    for (std::size_t p = 0; p < b.size(); ++p)
        if (b.get(p) == value && ++seen == k)
            return p + 1;
    throw std::out_of_range("oracle select");
}

// position (1-based) of the minimum of a[l..r], leftmost on ties
template <typename T>
std::size_t range_min_pos(const std::vector<T>& a, std::size_t l, std::size_t r)
{
    std::size_t best = l;
    for (std::size_t i = l + 1; i <= r; ++i)
        if (a[i - 1] < a[best - 1])
            best = i;
    return best;
}

// previous smaller value: largest j < i with a[j] < a[i], 0 when none;
// duplicates rank by position, so an equal earlier value counts as smaller
template <typename T>
std::size_t psv(const std::vector<T>& a, std::size_t i)
{
    for (std::size_t j = i; j-- > 1;)
        if (a[j - 1] <= a[i - 1])
            return j;
    return 0;
}

struct forest {
    std::vector<std::size_t> parents;
    std::vector<std::vector<std::size_t>> children;
    std::vector<std::size_t> roots;

    static forest from_parents(const std::vector<std::size_t>& ps)
    {
        forest f;
        f.parents = ps;
        f.children.resize(ps.size());
        for (std::size_t v = 0; v < ps.size(); ++v) {
            if (ps[v] == npos)
                f.roots.push_back(v);
            else
                f.children[ps[v]].push_back(v);
        }
        return f;
    }

    static forest from_parens(const lrmkit::bit_string& bits)
    {
        std::vector<std::size_t> ps;
        std::vector<std::size_t> stk;
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits.get(i)) {
                const std::size_t v = ps.size();
                ps.push_back(stk.empty() ? npos : stk.back());
                stk.push_back(v);
            } else {
                if (stk.empty())
                    throw std::runtime_error("oracle forest: unbalanced");
                stk.pop_back();
            }
        }
        if (!stk.empty())
            throw std::runtime_error("oracle forest: unbalanced");
        return from_parents(ps);
    }

    std::size_t size() const { return parents.size(); }
    bool is_leaf(std::size_t v) const { return children[v].empty(); }

    std::size_t depth(std::size_t v) const
    {
        std::size_t d = 0;
        while (parents[v] != npos) {
            v = parents[v];
            ++d;
        }
        return d;
    }

    std::vector<std::size_t> ancestors(std::size_t v) const
    {
        std::vector<std::size_t> chain{v};
        while (parents[v] != npos) {
            v = parents[v];
            chain.push_back(v);
        }
        return chain;
    }

    std::size_t lca(std::size_t u, std::size_t v) const
    {
        const auto cu = ancestors(u);
        for (std::size_t x : ancestors(v))
            if (std::find(cu.begin(), cu.end(), x) != cu.end())
                return x;
        return npos;
    }

    // child of a on the path to v; a must be a proper ancestor
    std::size_t child_toward(std::size_t a, std::size_t v) const
    {
        while (parents[v] != npos) {
            if (parents[v] == a)
                return v;
            v = parents[v];
        }
        throw std::runtime_error("oracle child_toward: not an ancestor");
    }

    bool is_ancestor(std::size_t a, std::size_t v) const
    {
        for (std::size_t x : ancestors(v))
            if (x == a)
                return true;
        return false;
    }

    std::size_t leaf_rank(std::size_t v) const
    {
        std::size_t r = 0;
        for (std::size_t u = 0; u <= v; ++u)
            r += is_leaf(u) ? 1 : 0;
        return r;
    }

    std::size_t leaf_select(std::size_t k) const
    {
        std::size_t seen = 0;
        for (std::size_t u = 0; u < size(); ++u)
            if (is_leaf(u) && ++seen == k)
                return u;
        throw std::out_of_range("oracle leaf_select");
    }

    std::size_t internal_rank(std::size_t v) const
    {
        std::size_t r = 0;
        for (std::size_t u = 0; u <= v; ++u)
            r += is_leaf(u) ? 0 : 1;
        return r;
    }

    std::size_t internal_select(std::size_t k) const
    {
        std::size_t seen = 0;
        for (std::size_t u = 0; u < size(); ++u)
            if (!is_leaf(u) && ++seen == k)
                return u;
        throw std::out_of_range("oracle internal_select");
    }

    std::size_t leaf_children_left_of(std::size_t v) const
    {
        const auto& sibs = parents[v] == npos ? roots : children[parents[v]];
        std::size_t r = 0;
        for (std::size_t s : sibs) {
            if (s == v)
                break;
            r += is_leaf(s) ? 1 : 0;
        }
        return r;
    }

    std::size_t leaf_child_count(std::size_t u) const
    {
        std::size_t r = 0;
        for (std::size_t c : children[u])
            r += is_leaf(c) ? 1 : 0;
        return r;
    }

    std::size_t leaf_child_select(std::size_t u, std::size_t p) const
    {
        std::size_t seen = 0;
        for (std::size_t c : children[u])
            if (is_leaf(c) && ++seen == p)
                return c;
        throw std::out_of_range("oracle leaf_child_select");
    }
};

// every balanced parenthesis string with the given number of pairs
inline std::vector<lrmkit::bit_string> all_forests(std::size_t pairs)
{
    std::vector<lrmkit::bit_string> out;
    lrmkit::bit_string cur;
    const auto rec = [&](auto&& self, std::size_t opens, std::size_t closes) -> void {
        if (opens == pairs && closes == pairs) {
            out.push_back(cur);
            return;
        }
        if (opens < pairs) {
            cur.push_back(true);
            self(self, opens + 1, closes);
            cur.pop_back();
        }
        if (closes < opens) {
            cur.push_back(false);
            self(self, opens, closes + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

} // namespace oracle
