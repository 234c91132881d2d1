#include <lrmkit/rmq.hpp>

#include <cmath>
#include <stdexcept>

#include <lrmkit/errors.hpp>
#include <lrmkit/intmath.hpp>

namespace lrmkit {

namespace {

void check_range(std::size_t n, std::size_t i, std::size_t j) {
    if (i == 0 || j > n || i > j) {
        throw std::out_of_range("rmq: query range outside 1 <= i <= j <= n");
    }
}

// heads-array view: values of a at the set positions of heads
input_array heads_array(const input_array& a, const bit_string& heads) {
    std::vector<std::int64_t> vals;
    for (std::size_t i = 1; i <= heads.size(); ++i) {
        if (heads.get(i - 1)) {
            vals.push_back(a.value(i));
        }
    }
    return input_array(std::move(vals));
}

} // namespace

plain_rmq_index::plain_rmq_index(bp_forest tree) : m_tree(std::move(tree)) {
    if (m_tree.size() == 0) {
        throw structure_error("plain rmq: empty tree");
    }
    const auto ps = m_tree.to_parents();
    for (std::size_t v = 1; v < ps.size(); ++v) {
        if (ps[v] == bp_forest::npos) {
            throw structure_error("plain rmq: tree must have a single root");
        }
    }
}

std::size_t plain_rmq_index::query(std::size_t i, std::size_t j) const {
    check_range(size(), i, j);
    const std::size_t l = m_tree.lca(i, j);
    return l == i ? i : m_tree.child_toward(l, j);
}

rmq_size_report plain_rmq_index::size_report() const {
    const bp_size_report b = m_tree.size_report();
    rmq_size_report r;
    r.payload_bits = b.paren_bits;
    r.directory_bits = b.nav_bits;
    r.total_bits = r.payload_bits + r.directory_bits;
    return r;
}

strict_runs_rmq_index::strict_runs_rmq_index(const input_array& a)
    : strict_runs_rmq_index(run_heads(a, true), a) {}

strict_runs_rmq_index::strict_runs_rmq_index(const bit_string& head_bits,
                                             const input_array& a)
    : m_heads(head_bits), m_heads_index(heads_array(a, head_bits)) {}

strict_runs_rmq_index::strict_runs_rmq_index(const bit_string& head_bits,
                                             bp_forest heads_tree)
    : m_heads(head_bits), m_heads_index(std::move(heads_tree)) {
    if (m_heads.ones() != m_heads_index.size()) {
        throw structure_error("strict-runs rmq: head count does not match heads tree");
    }
}

std::size_t strict_runs_rmq_index::query(std::size_t i, std::size_t j) const {
    check_range(size(), i, j);
    const std::size_t x = m_heads.rank1(i);
    const std::size_t y = m_heads.rank1(j);
    const std::size_t mp = m_heads_index.query(x, y);
    const std::size_t m = m_heads.select1(mp);
    return m < i ? i : m;
}

rmq_size_report strict_runs_rmq_index::size_report() const {
    const bit_size_report h = m_heads.size_report();
    const bp_size_report t = m_heads_index.tree().size_report();
    rmq_size_report r;
    r.payload_bits = h.payload_bits + t.paren_bits;
    r.directory_bits = h.directory_bits + t.nav_bits;
    r.total_bits = r.payload_bits + r.directory_bits;
    return r;
}

runs_rmq_index::runs_rmq_index(const input_array& a)
    : runs_rmq_index(run_heads(a, false), a) {}

runs_rmq_index::runs_rmq_index(const bit_string& head_bits, const input_array& a)
    : m_heads(head_bits), m_heads_index(heads_array(a, head_bits)) {}

runs_rmq_index::runs_rmq_index(const bit_string& head_bits, bp_forest heads_tree)
    : m_heads(head_bits), m_heads_index(std::move(heads_tree)) {
    if (m_heads.ones() != m_heads_index.size()) {
        throw structure_error("runs rmq: head count does not match heads tree");
    }
}

std::size_t runs_rmq_index::query(const input_array& a, std::size_t i,
                                  std::size_t j) const {
    if (a.size() != size()) {
        throw structure_error("runs rmq: array length differs from build");
    }
    check_range(size(), i, j);
    const std::size_t x = m_heads.rank1(i);
    const std::size_t y = m_heads.rank1(j);
    if (x == y) {
        return i;
    }
    const std::size_t mp = m_heads_index.query(x + 1, y);
    const std::size_t m = m_heads.select1(mp);
    return a.less(i, m) ? i : m;
}

rmq_size_report runs_rmq_index::size_report() const {
    const bit_size_report h = m_heads.size_report();
    const bp_size_report t = m_heads_index.tree().size_report();
    rmq_size_report r;
    r.payload_bits = h.payload_bits + t.paren_bits;
    r.directory_bits = h.directory_bits + t.nav_bits;
    r.total_bits = r.payload_bits + r.directory_bits;
    return r;
}

tree_entropy_report tree_entropy(const lrm_tree& t) {
    const auto& ps = t.parents();
    const std::size_t nn = ps.size();
    std::vector<std::uint64_t> deg(nn, 0);
    for (std::size_t v = 1; v < nn; ++v) {
        ++deg[ps[v]];
    }
    std::vector<std::uint64_t> hist;
    for (std::size_t v = 0; v < nn; ++v) {
        const std::uint64_t d = deg[v];
        if (hist.size() <= d) {
            hist.resize(d + 1, 0);
        }
        ++hist[d];
    }
    tree_entropy_report r;
    r.node_count = nn;
    r.degree_histogram = hist;
    r.bits = log2_multinomial(nn, hist) - std::log2(static_cast<double>(nn));
    return r;
}

} // namespace lrmkit
