#include <lrmkit/partition_sort.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include <lrmkit/errors.hpp>

namespace lrmkit {

double entropy(const std::vector<std::uint64_t>& lengths) {
    if (lengths.empty()) {
        throw std::invalid_argument("entropy: no parts");
    }
    std::uint64_t n = 0;
    for (const std::uint64_t w : lengths) {
        if (w == 0) {
            throw std::invalid_argument("entropy: parts must be positive");
        }
        n += w;
    }
    double h = 0.0;
    for (const std::uint64_t w : lengths) {
        const double f = static_cast<double>(w) / static_cast<double>(n);
        h += f * std::log2(static_cast<double>(n) / static_cast<double>(w));
    }
    return h;
}

partition runs_partition(const input_array& a, bool strict) {
    const bit_string heads = run_heads(a, strict);
    partition p;
    p.kind = strict ? partition_kind::strict_runs : partition_kind::runs;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        if (heads.get(i - 1)) {
            p.subsequences.emplace_back();
        }
        p.subsequences.back().push_back(i);
    }
    for (const auto& s : p.subsequences) {
        p.lengths.push_back(s.size());
    }
    return p;
}

partition lrm_partition(const lrm_tree& t, std::uint64_t* internal_ops) {
    const std::size_t n = t.n();
    std::uint64_t ops = 0;
    partition p;
    p.kind = partition_kind::lrm;
    if (n == 0) {
        if (internal_ops) {
            *internal_ops += ops;
        }
        return p;
    }

    const auto& parents = t.parents();

    // subtree height and the leftmost child achieving it; ids descend, so on
    // ties (>=) the smallest child id is the one left standing, and every
    // height[v] is final before v's own parent update runs
    std::vector<std::uint32_t> height(n + 1, 0);
    std::vector<std::size_t> deepest_child(n + 1, merge_tree::npos);
    for (std::size_t v = n; v >= 1; --v) {
        const std::size_t par = parents[v];
        if (height[v] + 1 >= height[par]) {
            height[par] = height[v] + 1;
            deepest_child[par] = v;
        }
        ++ops;
    }

    // peeling the leftmost-deepest root-to-leaf path and recursing on the
    // pieces that fall off makes a node a path head exactly when it is not
    // its parent's deepest child; the artificial minimum is never emitted,
    // so all of its children head paths
    for (std::size_t v = 1; v <= n; ++v) {
        if (parents[v] != 0 && deepest_child[parents[v]] == v) {
            continue;
        }
        std::vector<std::size_t> path;
        for (std::size_t u = v; u != merge_tree::npos; u = deepest_child[u]) {
            path.push_back(u);
            ++ops;
        }
        p.subsequences.push_back(std::move(path));
    }

    std::sort(p.subsequences.begin(), p.subsequences.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    for (const auto& s : p.subsequences) {
        p.lengths.push_back(s.size());
    }
    if (internal_ops) {
        *internal_ops += ops;
    }
    return p;
}

merge_tree huffman_merge_plan(const std::vector<std::uint64_t>& lengths,
                              std::uint64_t* internal_ops) {
    if (lengths.empty()) {
        throw std::invalid_argument("merge plan: no parts");
    }
    std::uint64_t ops = 0;
    merge_tree plan;
    plan.leaf_count = lengths.size();
    plan.weight.assign(lengths.begin(), lengths.end());
    for (const std::uint64_t w : lengths) {
        if (w == 0) {
            throw std::invalid_argument("merge plan: parts must be positive");
        }
    }

    using entry = std::pair<std::uint64_t, std::size_t>;  // weight, creation id
    std::priority_queue<entry, std::vector<entry>, std::greater<entry>> heap;
    for (std::size_t id = 0; id < plan.leaf_count; ++id) {
        heap.push({plan.weight[id], id});
        ++ops;
    }
    plan.parent.assign(plan.leaf_count, merge_tree::npos);
    while (heap.size() > 1) {
        const entry l = heap.top();
        heap.pop();
        const entry r = heap.top();
        heap.pop();
        const std::size_t id = plan.leaf_count + plan.internals.size();
        plan.internals.push_back({l.second, r.second});
        plan.weight.push_back(l.first + r.first);
        plan.parent.push_back(merge_tree::npos);
        plan.parent[l.second] = id;
        plan.parent[r.second] = id;
        heap.push({l.first + r.first, id});
        ops += 3;
    }

    std::vector<std::uint32_t> depth(plan.node_count(), 0);
    for (std::size_t k = plan.internals.size(); k-- > 0;) {
        const std::size_t id = plan.leaf_count + k;
        depth[plan.internals[k].left] = depth[id] + 1;
        depth[plan.internals[k].right] = depth[id] + 1;
    }
    plan.leaf_depth.assign(depth.begin(), depth.begin() + static_cast<std::ptrdiff_t>(plan.leaf_count));
    for (std::size_t id = 0; id < plan.leaf_count; ++id) {
        plan.weighted_path_length += plan.weight[id] * depth[id];
        plan.max_leaf_depth = std::max(plan.max_leaf_depth, depth[id]);
    }
    if (internal_ops) {
        *internal_ops += ops;
    }
    return plan;
}

namespace {

void validate_partition(const input_array& a, const partition& p,
                        const merge_tree& plan) {
    const std::size_t n = a.size();
    if (p.subsequences.size() != p.lengths.size() ||
        p.lengths.size() != plan.leaf_count) {
        throw structure_error("merge: partition and plan sizes disagree");
    }
    std::vector<bool> seen(n + 1, false);
    for (std::size_t s = 0; s < p.subsequences.size(); ++s) {
        const auto& sub = p.subsequences[s];
        if (sub.size() != p.lengths[s] || sub.size() != plan.weight[s]) {
            throw structure_error("merge: subsequence length disagrees with plan weight");
        }
        for (std::size_t k = 0; k < sub.size(); ++k) {
            const std::size_t pos = sub[k];
            if (pos == 0 || pos > n || seen[pos]) {
                throw structure_error("merge: positions must cover 1..n exactly once");
            }
            seen[pos] = true;
            if (k > 0) {
                const std::size_t prev = sub[k - 1];
                if (prev >= pos || a.value(prev) > a.value(pos)) {
                    throw structure_error("merge: subsequences must ascend");
                }
            }
        }
    }
    std::uint64_t covered = 0;
    for (const std::uint64_t w : p.lengths) {
        covered += w;
    }
    if (covered != n) {
        throw structure_error("merge: positions must cover 1..n exactly once");
    }
}

} // namespace

merge_result merge_by_plan(const input_array& a, const partition& p,
                           const merge_tree& plan, bool record_bits) {
    validate_partition(a, p, plan);
    merge_result out;
    const std::uint64_t before = a.comparisons();

    std::vector<std::vector<std::size_t>> buf(plan.node_count());
    for (std::size_t s = 0; s < plan.leaf_count; ++s) {
        buf[s] = p.subsequences[s];
    }
    if (record_bits) {
        out.node_bits.resize(plan.internals.size());
    }
    for (std::size_t k = 0; k < plan.internals.size(); ++k) {
        const std::size_t id = plan.leaf_count + k;
        std::vector<std::size_t>& left = buf[plan.internals[k].left];
        std::vector<std::size_t>& right = buf[plan.internals[k].right];
        std::vector<std::size_t>& merged = buf[id];
        merged.reserve(left.size() + right.size());
        bit_string* bits = record_bits ? &out.node_bits[k] : nullptr;
        if (bits) {
            bits->reserve(left.size() + right.size());
        }
        std::size_t li = 0;
        std::size_t ri = 0;
        while (li < left.size() && ri < right.size()) {
            const bool take_right = a.less(right[ri], left[li]);
            merged.push_back(take_right ? right[ri++] : left[li++]);
            if (bits) {
                bits->push_back(take_right);
            }
            ++out.internal_ops;
        }
        for (; li < left.size(); ++li) {
            merged.push_back(left[li]);
            if (bits) {
                bits->push_back(false);
            }
            ++out.internal_ops;
        }
        for (; ri < right.size(); ++ri) {
            merged.push_back(right[ri]);
            if (bits) {
                bits->push_back(true);
            }
            ++out.internal_ops;
        }
        left.clear();
        left.shrink_to_fit();
        right.clear();
        right.shrink_to_fit();
    }
    out.positions = std::move(buf[plan.root()]);
    out.comparisons = a.comparisons() - before;
    return out;
}

namespace {

std::pair<std::vector<std::int64_t>, sort_stats> run_pipeline(
    const input_array& a, const partition& p, std::uint64_t cmp_build,
    std::uint64_t ops_so_far) {
    sort_stats st;
    st.n = a.size();
    st.parts = p.lengths.size();
    st.h_partition = entropy(p.lengths);
    st.cmp_build = cmp_build;
    std::uint64_t plan_ops = 0;
    const merge_tree plan = huffman_merge_plan(p.lengths, &plan_ops);
    st.max_leaf_depth = plan.max_leaf_depth;
    merge_result merged = merge_by_plan(a, p, plan, false);
    st.cmp_merge = merged.comparisons;
    st.cmp_total = st.cmp_build + st.cmp_merge;
    st.internal_ops = ops_so_far + plan_ops + merged.internal_ops;
    std::vector<std::int64_t> sorted;
    sorted.reserve(merged.positions.size());
    for (const std::size_t pos : merged.positions) {
        sorted.push_back(a.value(pos));
    }
    return {std::move(sorted), st};
}

} // namespace

std::pair<std::vector<std::int64_t>, sort_stats> sort_lrm(const input_array& a) {
    if (a.size() == 0) {
        return {{}, sort_stats{}};
    }
    const std::uint64_t before = a.comparisons();
    const lrm_tree t = build_lrm_tree(a);
    const std::uint64_t cmp_build = a.comparisons() - before;
    std::uint64_t ops = 0;
    const partition p = lrm_partition(t, &ops);
    return run_pipeline(a, p, cmp_build, ops);
}

std::pair<std::vector<std::int64_t>, sort_stats> sort_runs_baseline(
    const input_array& a) {
    const std::size_t n = a.size();
    if (n == 0) {
        return {{}, sort_stats{}};
    }
    const std::uint64_t before = a.comparisons();
    partition p;
    p.kind = partition_kind::runs;
    p.subsequences.emplace_back();
    p.subsequences.back().push_back(1);
    for (std::size_t i = 2; i <= n; ++i) {
        if (a.less(i, i - 1)) {
            p.subsequences.emplace_back();
        }
        p.subsequences.back().push_back(i);
    }
    for (const auto& s : p.subsequences) {
        p.lengths.push_back(s.size());
    }
    const std::uint64_t cmp_build = a.comparisons() - before;
    return run_pipeline(a, p, cmp_build, 0);
}

measure_report measures(const input_array& a) {
    const input_array local(a.values());  // keeps the caller's counter untouched
    measure_report r;
    r.n = local.size();
    if (r.n == 0) {
        return r;
    }
    const partition runs = runs_partition(local, false);
    r.rho = runs.lengths.size();
    r.h_runs = entropy(runs.lengths);
    r.rho_strict = run_heads(local, true).popcount();

    const lrm_tree t = build_lrm_tree(local);
    const partition lrm = lrm_partition(t);
    r.h_lrm = entropy(lrm.lengths);

    // greedy patience cover: each element lands on the leftmost increasing
    // pile it extends; pile tops stay lexicographically descending
    std::vector<std::pair<std::int64_t, std::size_t>> tops;
    for (std::size_t i = 1; i <= r.n; ++i) {
        const std::pair<std::int64_t, std::size_t> key{local.value(i), i};
        auto it = std::upper_bound(
            tops.begin(), tops.end(), key,
            [](const auto& k, const auto& top) { return top < k; });
        if (it == tops.end()) {
            tops.push_back(key);
        } else {
            *it = key;
        }
    }
    r.n_sus = tops.size();
    return r;
}

} // namespace lrmkit
