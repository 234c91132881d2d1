#include <lrmkit/permcode.hpp>

#include <bit>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <lrmkit/errors.hpp>
#include <lrmkit/lrm.hpp>

namespace lrmkit {

perm_code perm_code::encode(const std::vector<std::int64_t>& pi, bool with_psv_rmq)
{
    const std::size_t n = pi.size();
    std::vector<bool> seen(n + 1, false);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t v = pi[i];
        if (v < 1 || v > static_cast<std::int64_t>(n))
            throw std::invalid_argument("encode: value out of range at position " +
                                        std::to_string(i + 1));
        if (seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("encode: duplicate value at position " +
                                        std::to_string(i + 1));
        seen[static_cast<std::size_t>(v)] = true;
    }

    perm_code c;
    c.m_n = n;
    const input_array a(pi);
    const lrm_tree t = build_lrm_tree(a);
    const partition parts = lrm_partition(t);
    c.m_rho = parts.subsequences.size();

    // One internal node per subsequence, opened at its first position; one
    // leaf per position; closed at its last. Spans nest properly because each
    // subsequence is a tree path and the subtrees falling off it occupy whole
    // position intervals, so a mismatched close can only mean a bug upstream
    // — from_parens would reject the string.
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> start_part(n + 1, none);
    std::vector<std::size_t> end_part(n + 1, none);
    for (std::size_t s = 0; s < c.m_rho; ++s) {
        start_part[parts.subsequences[s].front()] = s;
        end_part[parts.subsequences[s].back()] = s;
    }
    bit_string parens;
    parens.reserve(2 * (n + c.m_rho));
    std::vector<std::size_t> open;
    for (std::size_t i = 1; i <= n; ++i) {
        if (start_part[i] != none) {
            open.push_back(start_part[i]);
            parens.push_back(true);
        }
        parens.push_back(true);
        parens.push_back(false);
        if (!open.empty() && end_part[i] == open.back()) {
            open.pop_back();
            parens.push_back(false);
        }
    }
    c.m_forest = bp_forest::from_parens(parens);

    if (n > 0) {
        c.m_plan = huffman_merge_plan(parts.lengths);
        merge_result mr = merge_by_plan(a, parts, c.m_plan, true);
        c.m_node_bits.reserve(mr.node_bits.size());
        for (bit_string& nb : mr.node_bits)
            c.m_node_bits.emplace_back(std::move(nb));
    }
    if (with_psv_rmq)
        c.m_lrm.emplace(plain_rmq_index(t.bp()));
    return c;
}

perm_code::perm_code(bp_forest forest, merge_tree plan, std::vector<bit_string> node_bits,
                     std::optional<bp_forest> lrm_tree_bp)
    : m_n(forest.leaf_count()),
      m_rho(forest.internal_count()),
      m_forest(std::move(forest)),
      m_plan(std::move(plan))
{
    if (m_n == 0) {
        if (m_rho != 0 || !node_bits.empty())
            throw structure_error("perm code: empty forest with a nonempty plan");
    } else {
        if (m_plan.leaf_count != m_rho)
            throw structure_error("perm code: plan leaves disagree with forest subsequences");
        if (m_plan.internals.size() + 1 != m_plan.leaf_count)
            throw structure_error("perm code: plan is not a single merge tree");
        if (node_bits.size() != m_plan.internals.size())
            throw structure_error("perm code: one bit sequence per merge node required");
        const std::size_t nodes = m_plan.node_count();
        if (m_plan.parent.size() != nodes || m_plan.weight.size() != nodes)
            throw structure_error("perm code: malformed plan tables");

        std::uint64_t covered = 0;
        for (std::size_t s = 1; s <= m_rho; ++s) {
            const std::uint64_t w = m_forest.leaf_child_count(m_forest.internal_select(s));
            if (w == 0)
                throw structure_error("perm code: empty subsequence");
            if (w != m_plan.weight[s - 1])
                throw structure_error("perm code: plan weights disagree with the forest");
            covered += w;
        }
        if (covered != m_n)
            throw structure_error("perm code: leaves not covered by subsequences");

        std::vector<bool> claimed(nodes, false);
        for (std::size_t k = 0; k < m_plan.internals.size(); ++k) {
            const std::size_t id = m_plan.leaf_count + k;
            const merge_tree::merge_node nd = m_plan.internals[k];
            if (nd.left >= id || nd.right >= id || nd.left == nd.right ||
                claimed[nd.left] || claimed[nd.right])
                throw structure_error("perm code: plan is not a tree");
            claimed[nd.left] = true;
            claimed[nd.right] = true;
            if (m_plan.parent[nd.left] != id || m_plan.parent[nd.right] != id)
                throw structure_error("perm code: plan parent links disagree");
            if (m_plan.weight[id] != m_plan.weight[nd.left] + m_plan.weight[nd.right])
                throw structure_error("perm code: plan weights do not add up");
        }
        if (m_plan.parent[m_plan.root()] != merge_tree::npos)
            throw structure_error("perm code: plan root has a parent");

        m_node_bits.reserve(node_bits.size());
        for (std::size_t k = 0; k < node_bits.size(); ++k) {
            plain_bit_vector pv(std::move(node_bits[k]));
            const std::size_t id = m_plan.leaf_count + k;
            if (pv.size() != m_plan.weight[id] ||
                pv.ones() != m_plan.weight[m_plan.internals[k].right])
                throw structure_error("perm code: node bits disagree with plan weights");
            m_node_bits.push_back(std::move(pv));
        }
    }

    if (lrm_tree_bp) {
        plain_rmq_index idx(std::move(*lrm_tree_bp));
        if (idx.size() != m_n)
            throw structure_error("perm code: retained tree size disagrees");
        m_lrm.emplace(std::move(idx));
    }
}

void perm_code::check_position(std::size_t i, const char* who) const
{
    if (i < 1 || i > m_n)
        throw std::out_of_range(std::string(who) + ": position out of range");
}

perm_code::part_ref perm_code::map(std::size_t i) const
{
    check_position(i, "map");
    const std::size_t leaf = m_forest.leaf_select(i);
    const std::size_t p = m_forest.parent(leaf);
    return {m_forest.internal_rank(p), m_forest.leaf_children_left_of(leaf) + 1};
}

std::size_t perm_code::unmap(std::size_t part, std::size_t offset) const
{
    if (part < 1 || part > m_rho)
        throw std::out_of_range("unmap: no such subsequence");
    const std::size_t node = m_forest.internal_select(part);
    return m_forest.leaf_rank(m_forest.leaf_child_select(node, offset));
}

std::size_t perm_code::apply(std::size_t i) const
{
    const part_ref loc = map(i);
    std::size_t id = loc.part - 1;
    std::size_t offset = loc.offset;
    while (id != m_plan.root()) {
        const std::size_t par = m_plan.parent[id];
        const std::size_t k = par - m_plan.leaf_count;
        offset = m_plan.internals[k].left == id ? m_node_bits[k].select0(offset)
                                                : m_node_bits[k].select1(offset);
        id = par;
    }
    return offset;
}

std::size_t perm_code::inverse(std::size_t v) const
{
    check_position(v, "inverse");
    std::size_t id = m_plan.root();
    std::size_t offset = v;
    while (!m_plan.is_leaf(id)) {
        const std::size_t k = id - m_plan.leaf_count;
        const plain_bit_vector& nb = m_node_bits[k];
        if (nb.bit(offset)) {
            offset = nb.rank1(offset);
            id = m_plan.internals[k].right;
        } else {
            offset = nb.rank0(offset);
            id = m_plan.internals[k].left;
        }
    }
    return unmap(id + 1, offset);
}

std::size_t perm_code::psv_query(std::size_t i) const
{
    if (!m_lrm)
        throw capability_error("psv_query: built without the minima tree");
    check_position(i, "psv_query");
    return m_lrm->tree().parent(i);
}

std::size_t perm_code::rmq_query(std::size_t i, std::size_t j) const
{
    if (!m_lrm)
        throw capability_error("rmq_query: built without the minima tree");
    return m_lrm->query(i, j);
}

perm_size_report perm_code::size_report() const
{
    perm_size_report r;
    const bp_size_report fr = m_forest.size_report();
    r.forest_paren_bits = fr.paren_bits;
    r.forest_nav_bits = fr.nav_bits;
    for (const plain_bit_vector& nb : m_node_bits) {
        const bit_size_report br = nb.size_report();
        r.merge_payload_bits += br.payload_bits;
        r.merge_directory_bits += br.directory_bits;
    }
    if (m_rho > 0) {
        // preorder shape: 2·parts − 1 tokens, each wide enough for a leaf id
        // or the internal marker
        const std::uint64_t tokens = 2 * static_cast<std::uint64_t>(m_rho) - 1;
        r.merge_shape_bits = tokens * std::bit_width(static_cast<std::uint64_t>(m_rho));
    }
    if (m_lrm)
        r.lrm_bits = m_lrm->size_report().total_bits;
    r.total_bits = r.forest_paren_bits + r.forest_nav_bits + r.merge_payload_bits +
                   r.merge_directory_bits + r.merge_shape_bits + r.lrm_bits;
    return r;
}

} // namespace lrmkit
