#include <lrmkit/lrm.hpp>

#include <algorithm>
#include <numeric>

#include <lrmkit/errors.hpp>

namespace lrmkit {

lrm_tree lrm_tree::from_bp(const bp_forest& f) {
    const std::size_t nn = f.size();
    if (nn == 0) {
        throw structure_error("lrm_tree: empty forest");
    }
    std::vector<std::size_t> parents = f.to_parents();
    for (std::size_t v = 1; v < nn; ++v) {
        if (parents[v] == bp_forest::npos) {
            throw structure_error("lrm_tree: forest has more than one root");
        }
    }
    std::vector<std::uint32_t> depths(nn, 0);
    for (std::size_t v = 1; v < nn; ++v) {
        depths[v] = depths[parents[v]] + 1;
    }
    return lrm_tree(std::move(parents), std::move(depths));
}

lrm_tree build_lrm_tree(const input_array& a) {
    const std::size_t n = a.size();
    std::vector<std::size_t> parents(n + 1);
    std::vector<std::uint32_t> depths(n + 1, 0);
    parents[0] = bp_forest::npos;
    std::vector<std::size_t> stk;
    stk.reserve(n + 1);
    stk.push_back(0);
    for (std::size_t i = 1; i <= n; ++i) {
        // climb the rightmost branch: one counted comparison per pop, one for
        // the test that stops the climb; the artificial minimum stops it
        // without reading a value but the insertion is still charged
        while (stk.back() != 0 && !a.less(stk.back(), i)) {
            stk.pop_back();
        }
        if (stk.back() == 0) {
            a.charge();
        }
        parents[i] = stk.back();
        depths[i] = depths[stk.back()] + 1;
        stk.push_back(i);
    }
    return lrm_tree(std::move(parents), std::move(depths));
}

bit_string run_heads(const input_array& a, bool strict) {
    const std::size_t n = a.size();
    bit_string h;
    h.reserve(n);
    if (!strict) {
        for (std::size_t i = 1; i <= n; ++i) {
            h.push_back(i == 1 || a.value(i) < a.value(i - 1));
        }
        return h;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{1});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const std::int64_t vx = a.value(x);
        const std::int64_t vy = a.value(y);
        return vx < vy || (vx == vy && x < y);
    });
    std::vector<std::size_t> rank(n + 1, 0);
    for (std::size_t k = 0; k < n; ++k) {
        rank[order[k]] = k + 1;
    }
    for (std::size_t i = 1; i <= n; ++i) {
        h.push_back(i == 1 || rank[i] != rank[i - 1] + 1);
    }
    return h;
}

} // namespace lrmkit
