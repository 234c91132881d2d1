#include "lrmkit/bp_forest.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

#include "lrmkit/errors.hpp"

namespace lrmkit {

namespace {

constexpr std::size_t k_super_bits = 4096;
constexpr std::size_t k_block_bits = 256;
constexpr std::size_t k_sample_every = 512;
constexpr std::size_t k_blocks_per_super = k_super_bits / k_block_bits;
constexpr std::int32_t k_no_min = std::numeric_limits<std::int32_t>::max();
constexpr std::int32_t k_no_max = std::numeric_limits<std::int32_t>::min();

std::uint64_t low_mask(std::size_t bits) noexcept
{
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

} // namespace

bp_forest bp_forest::from_parents(const std::vector<std::size_t>& parents)
{
    const std::size_t n = parents.size();
    bit_string bits;
    bits.reserve(2 * n + 2);
    bits.push_back(true); // wrapper
    std::vector<std::size_t> stk; // rightmost path
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t p = parents[v];
        if (p == npos) {
            while (!stk.empty()) {
                bits.push_back(false);
                stk.pop_back();
            }
        } else {
            if (p >= v)
                throw structure_error("forest parents: parent id must be smaller than child id");
            while (!stk.empty() && stk.back() != p) {
                bits.push_back(false);
                stk.pop_back();
            }
            if (stk.empty())
                throw structure_error("forest parents: ids are not a preorder numbering");
        }
        bits.push_back(true);
        stk.push_back(v);
    }
    while (!stk.empty()) {
        bits.push_back(false);
        stk.pop_back();
    }
    bits.push_back(false);

    bp_forest f;
    f.init(std::move(bits));
    return f;
}

bp_forest bp_forest::from_parens(const bit_string& parens)
{
    if (parens.size() % 2 != 0)
        throw structure_error("forest parens: odd length");
    std::int64_t e = 0;
    for (std::size_t i = 0; i < parens.size(); ++i) {
        e += parens.get(i) ? 1 : -1;
        if (e < 0)
            throw structure_error("forest parens: close without a matching open");
    }
    if (e != 0)
        throw structure_error("forest parens: unclosed parenthesis");

    bit_string wrapped;
    wrapped.push_back(true);
    for (std::size_t i = 0; i < parens.size(); ++i)
        wrapped.push_back(parens.get(i));
    wrapped.push_back(false);

    bp_forest f;
    f.init(std::move(wrapped));
    return f;
}

void bp_forest::init(bit_string wrapped)
{
    const std::size_t len = wrapped.size();
    m_bp = plain_bit_vector(std::move(wrapped));
    m_n = static_cast<std::size_t>(m_bp.ones()) - 1;

    build_pattern_dir(m_leaf, false);
    build_pattern_dir(m_int, true);

    m_nblocks = (len + k_block_bits - 1) / k_block_bits;
    m_blk_min.assign(m_nblocks, k_no_min);
    m_blk_max.assign(m_nblocks, k_no_max);
    m_blk_cnt.assign(m_nblocks, 0);
    std::int64_t e = 0;
    bool prev_open = false;
    for (std::size_t pos = 1; pos <= len; ++pos) {
        const bool op = m_bp.bit(pos);
        e += op ? 1 : -1;
        const std::size_t b = (pos - 1) / k_block_bits;
        const bool lc = !op && prev_open;
        const auto e32 = static_cast<std::int32_t>(e);
        if (e32 < m_blk_min[b]) {
            m_blk_min[b] = e32;
            m_blk_cnt[b] = lc ? 1u : 0u;
        } else if (e32 == m_blk_min[b] && lc) {
            ++m_blk_cnt[b];
        }
        if (e32 > m_blk_max[b])
            m_blk_max[b] = e32;
        prev_open = op;
    }

    std::size_t base = 1;
    while (base < m_nblocks)
        base <<= 1;
    m_seg_base = base;
    m_seg.assign(2 * base, seg_node{k_no_min, k_no_max, 0});
    for (std::size_t b = 0; b < m_nblocks; ++b)
        m_seg[base + b] = seg_node{m_blk_min[b], m_blk_max[b], m_blk_cnt[b]};
    for (std::size_t i = base; i-- > 1;) {
        const seg_node& l = m_seg[2 * i];
        const seg_node& r = m_seg[2 * i + 1];
        seg_node& o = m_seg[i];
        o.mn = std::min(l.mn, r.mn);
        o.mx = std::max(l.mx, r.mx);
        o.cnt = (l.mn == o.mn ? l.cnt : 0) + (r.mn == o.mn ? r.cnt : 0);
    }
}

std::uint64_t bp_forest::pattern_word(std::size_t w, bool both_open) const noexcept
{
    const bit_string& p = m_bp.bits();
    const std::uint64_t cur = p.word(w);
    const std::uint64_t after = (cur >> 1) | (p.word(w + 1) << 63);
    std::uint64_t x = both_open ? (cur & after) : (cur & ~after);
    if (w == 0)
        x &= ~std::uint64_t{1}; // the wrapper is not a node
    return x;
}

void bp_forest::build_pattern_dir(pattern_dir& dir, bool both_open)
{
    const std::size_t len = m_bp.size();
    const std::size_t nwords = (len + 63) / 64;
    dir.super.assign(len / k_super_bits + 1, 0);
    dir.block.assign(len / k_block_bits + 1, 0);
    dir.samples.clear();
    dir.count = 0;

    std::vector<std::uint16_t> wcnt(nwords, 0);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < nwords; ++w) {
        std::uint64_t x = pattern_word(w, both_open);
        wcnt[w] = static_cast<std::uint16_t>(std::popcount(x));
        while (x) {
            const unsigned b = static_cast<unsigned>(std::countr_zero(x));
            if (acc % k_sample_every == 0)
                dir.samples.push_back(static_cast<std::uint32_t>(w * 64 + b + 1));
            ++acc;
            x &= x - 1;
        }
    }
    dir.count = acc;

    acc = 0;
    std::size_t w = 0;
    for (std::size_t b = 0; b * k_block_bits <= len; ++b) {
        const std::size_t boundary_word = (b * k_block_bits) / 64;
        while (w < boundary_word && w < nwords)
            acc += wcnt[w++];
        const std::size_t s = (b * k_block_bits) / k_super_bits;
        if ((b * k_block_bits) % k_super_bits == 0)
            dir.super[s] = acc;
        dir.block[b] = static_cast<std::uint16_t>(acc - dir.super[s]);
    }
}

std::size_t bp_forest::pattern_rank(const pattern_dir& dir, bool both_open, std::size_t prefix) const
{
    const std::size_t s = prefix / k_super_bits;
    const std::size_t b = prefix / k_block_bits;
    std::uint64_t r = dir.super[s] + dir.block[b];
    std::size_t w = (b * k_block_bits) / 64;
    const std::size_t wend = prefix / 64;
    for (; w < wend; ++w)
        r += static_cast<std::uint64_t>(std::popcount(pattern_word(w, both_open)));
    const std::size_t rem = prefix % 64;
    if (rem)
        r += static_cast<std::uint64_t>(std::popcount(pattern_word(wend, both_open) & low_mask(rem)));
    return static_cast<std::size_t>(r);
}

std::size_t bp_forest::pattern_select(const pattern_dir& dir, bool both_open, std::size_t k) const
{
    if (k == 0 || k > dir.count)
        throw std::out_of_range("pattern select: index out of range");
    const std::size_t len = m_bp.size();
    const std::size_t idx = (k - 1) / k_sample_every;
    std::size_t pos = dir.samples[idx] - 1; // 0-based candidate bit
    std::uint64_t have = static_cast<std::uint64_t>(idx) * k_sample_every;

    std::size_t s = pos / k_super_bits;
    while ((s + 1) * k_super_bits <= len && dir.super[s + 1] < k) {
        ++s;
        pos = s * k_super_bits;
        have = dir.super[s];
    }
    std::size_t b = pos / k_block_bits;
    while ((b + 1) * k_block_bits <= len && (b + 1) % k_blocks_per_super != 0
           && dir.super[s] + dir.block[b + 1] < k) {
        ++b;
        pos = b * k_block_bits;
        have = dir.super[s] + dir.block[b];
    }

    std::size_t w = pos / 64;
    std::uint64_t x = pattern_word(w, both_open) & ~low_mask(pos % 64);
    while (true) {
        while (x == 0)
            x = pattern_word(++w, both_open);
        const unsigned tz = static_cast<unsigned>(std::countr_zero(x));
        if (++have == k)
            return w * 64 + tz + 1;
        x &= x - 1;
    }
}

bool bp_forest::open_at(std::size_t pos) const noexcept
{
    return m_bp.bits().get(pos - 1);
}

std::int64_t bp_forest::excess(std::size_t pos) const
{
    return 2 * static_cast<std::int64_t>(m_bp.rank1(pos)) - static_cast<std::int64_t>(pos);
}

bool bp_forest::leaf_close_at(std::size_t pos) const noexcept
{
    return pos >= 2 && !open_at(pos) && open_at(pos - 1);
}

std::size_t bp_forest::open_of(std::size_t v) const
{
    return m_bp.select1(v + 2);
}

std::size_t bp_forest::node_at(std::size_t open_pos) const
{
    return static_cast<std::size_t>(m_bp.rank1(open_pos)) - 2;
}

void bp_forest::check_node(std::size_t v, const char* who) const
{
    if (v >= m_n)
        throw std::out_of_range(std::string(who) + ": node id out of range");
}

std::size_t bp_forest::find_close(std::size_t open_pos) const
{
    return fwd_search(open_pos, excess(open_pos) - 1);
}

std::size_t bp_forest::enclose_open(std::size_t open_pos) const
{
    return bwd_search(open_pos, excess(open_pos) - 2) + 1;
}

std::size_t bp_forest::fwd_search(std::size_t from, std::int64_t target) const
{
    const std::size_t len = m_bp.size();
    if (from >= len)
        return npos;
    const std::size_t b0 = from == 0 ? 0 : (from - 1) / k_block_bits;
    std::int64_t e = excess(from);
    const std::size_t bend = std::min((b0 + 1) * k_block_bits, len);
    for (std::size_t j = from + 1; j <= bend; ++j) {
        e += m_bp.bit(j) ? 1 : -1;
        if (e == target)
            return j;
    }

    const std::size_t b = seg_first_bracket(b0, target);
    if (b == npos)
        return npos;
    const std::size_t bs = b * k_block_bits;
    e = excess(bs);
    const std::size_t bend2 = std::min(bs + k_block_bits, len);
    for (std::size_t j = bs + 1; j <= bend2; ++j) {
        e += m_bp.bit(j) ? 1 : -1;
        if (e == target)
            return j;
    }
    return npos;
}

std::size_t bp_forest::bwd_search(std::size_t from, std::int64_t target) const
{
    if (from == 0)
        return npos;
    const std::size_t b0 = (from - 1) / k_block_bits;
    const std::size_t bs = b0 * k_block_bits;
    std::int64_t e = excess(from);
    std::size_t j = from;
    while (j > bs) {
        e -= m_bp.bit(j) ? 1 : -1;
        --j;
        if (j == 0)
            break;
        if (e == target)
            return j;
    }
    if (bs == 0)
        return target == 0 ? 0 : npos;

    const std::size_t b = seg_last_bracket(b0, target);
    if (b == npos)
        return target == 0 ? 0 : npos;
    const std::size_t hi = (b + 1) * k_block_bits;
    e = excess(hi);
    j = hi;
    while (true) {
        if (e == target)
            return j;
        if (j == b * k_block_bits + 1)
            break;
        e -= m_bp.bit(j) ? 1 : -1;
        --j;
    }
    return target == 0 ? 0 : npos;
}

bp_forest::min_cnt bp_forest::scan_min_leafclose(std::size_t l, std::size_t r) const
{
    min_cnt res{std::numeric_limits<std::int64_t>::max(), 0};
    std::int64_t e = excess(l - 1);
    bool prev_open = l >= 2 && open_at(l - 1);
    for (std::size_t j = l; j <= r; ++j) {
        const bool op = m_bp.bit(j);
        e += op ? 1 : -1;
        const bool lc = !op && prev_open;
        if (e < res.mn) {
            res.mn = e;
            res.cnt = lc ? 1u : 0u;
        } else if (e == res.mn && lc) {
            ++res.cnt;
        }
        prev_open = op;
    }
    return res;
}

bp_forest::min_cnt bp_forest::seg_query(std::size_t lb, std::size_t rb) const
{
    min_cnt res{std::numeric_limits<std::int64_t>::max(), 0};
    const auto fold = [&res](const seg_node& nd) {
        const auto mn = static_cast<std::int64_t>(nd.mn);
        if (mn < res.mn) {
            res.mn = mn;
            res.cnt = nd.cnt;
        } else if (mn == res.mn) {
            res.cnt += nd.cnt;
        }
    };
    std::size_t lo = m_seg_base + lb;
    std::size_t hi = m_seg_base + rb + 1;
    while (lo < hi) {
        if (lo & 1)
            fold(m_seg[lo++]);
        if (hi & 1)
            fold(m_seg[--hi]);
        lo >>= 1;
        hi >>= 1;
    }
    return res;
}

bp_forest::min_cnt bp_forest::range_min_leafclose(std::size_t l, std::size_t r) const
{
    if (l > r)
        return min_cnt{std::numeric_limits<std::int64_t>::max(), 0};
    const std::size_t bl = (l - 1) / k_block_bits;
    const std::size_t br = (r - 1) / k_block_bits;
    if (bl == br)
        return scan_min_leafclose(l, r);

    min_cnt res = scan_min_leafclose(l, (bl + 1) * k_block_bits);
    const auto fold = [&res](const min_cnt& o) {
        if (o.mn < res.mn)
            res = o;
        else if (o.mn == res.mn)
            res.cnt += o.cnt;
    };
    if (br > bl + 1)
        fold(seg_query(bl + 1, br - 1));
    fold(scan_min_leafclose(br * k_block_bits + 1, r));
    return res;
}

std::size_t bp_forest::seg_first_bracket(std::size_t from_block, std::int64_t target) const
{
    if (from_block + 1 >= m_nblocks)
        return npos;
    const auto brackets = [this, target](std::size_t node) {
        const seg_node& nd = m_seg[node];
        return static_cast<std::int64_t>(nd.mn) <= target && target <= static_cast<std::int64_t>(nd.mx);
    };
    std::size_t j = m_seg_base + from_block + 1;
    if (!brackets(j)) {
        while (true) {
            if (j == 1)
                return npos;
            const bool from_left = (j % 2 == 0);
            j >>= 1;
            if (from_left && brackets(2 * j + 1)) {
                j = 2 * j + 1;
                break;
            }
        }
    }
    while (j < m_seg_base)
        j = brackets(2 * j) ? 2 * j : 2 * j + 1;
    const std::size_t b = j - m_seg_base;
    return b < m_nblocks ? b : npos;
}

std::size_t bp_forest::seg_last_bracket(std::size_t to_block, std::int64_t target) const
{
    if (to_block == 0)
        return npos;
    const auto brackets = [this, target](std::size_t node) {
        const seg_node& nd = m_seg[node];
        return static_cast<std::int64_t>(nd.mn) <= target && target <= static_cast<std::int64_t>(nd.mx);
    };
    std::size_t j = m_seg_base + to_block - 1;
    if (!brackets(j)) {
        while (true) {
            if (j == 1)
                return npos;
            const bool from_right = (j % 2 == 1);
            j >>= 1;
            if (from_right && brackets(2 * j)) {
                j = 2 * j;
                break;
            }
        }
    }
    while (j < m_seg_base)
        j = brackets(2 * j + 1) ? 2 * j + 1 : 2 * j;
    return j - m_seg_base;
}

std::size_t bp_forest::seg_last_min(std::size_t lb, std::size_t rb, std::int64_t mn) const
{
    // rightmost block in [lb, rb] whose minimum equals mn
    struct walker {
        const bp_forest& f;
        std::size_t lb, rb;
        std::int64_t mn;
        std::size_t run(std::size_t node, std::size_t nl, std::size_t nr) const
        {
            if (nr < lb || nl > rb)
                return npos;
            if (lb <= nl && nr <= rb && static_cast<std::int64_t>(f.m_seg[node].mn) != mn)
                return npos;
            if (nl == nr)
                return static_cast<std::int64_t>(f.m_seg[node].mn) == mn ? nl : npos;
            const std::size_t mid = nl + (nr - nl) / 2;
            const std::size_t right = run(2 * node + 1, mid + 1, nr);
            if (right != npos)
                return right;
            return run(2 * node, nl, mid);
        }
    };
    return walker{*this, lb, rb, mn}.run(1, 0, m_seg_base - 1);
}

std::size_t bp_forest::range_rightmost_min(std::size_t l, std::size_t r, std::int64_t mn) const
{
    const auto scan_rightmost = [this, mn](std::size_t sl, std::size_t sr) {
        std::int64_t e = excess(sl - 1);
        std::size_t best = npos;
        for (std::size_t j = sl; j <= sr; ++j) {
            e += m_bp.bit(j) ? 1 : -1;
            if (e == mn)
                best = j;
        }
        return best;
    };

    const std::size_t bl = (l - 1) / k_block_bits;
    const std::size_t br = (r - 1) / k_block_bits;
    if (bl == br)
        return scan_rightmost(l, r);
    std::size_t hit = scan_rightmost(br * k_block_bits + 1, r);
    if (hit != npos)
        return hit;
    if (br > bl + 1) {
        const std::size_t blk = seg_last_min(bl + 1, br - 1, mn);
        if (blk != npos)
            return scan_rightmost(blk * k_block_bits + 1, (blk + 1) * k_block_bits);
    }
    return scan_rightmost(l, (bl + 1) * k_block_bits);
}

std::size_t bp_forest::kth_leafclose_at(std::size_t l, std::size_t r, std::int64_t mn, std::uint64_t p) const
{
    if (l > r || p == 0)
        return npos;
    std::uint64_t k = p;

    const auto scan_kth = [this, mn, &k](std::size_t sl, std::size_t sr) {
        std::int64_t e = excess(sl - 1);
        bool prev_open = sl >= 2 && open_at(sl - 1);
        for (std::size_t j = sl; j <= sr; ++j) {
            const bool op = m_bp.bit(j);
            e += op ? 1 : -1;
            if (e == mn && !op && prev_open && --k == 0)
                return j;
            prev_open = op;
        }
        return npos;
    };

    const std::size_t bl = (l - 1) / k_block_bits;
    const std::size_t br = (r - 1) / k_block_bits;
    if (bl == br)
        return scan_kth(l, r);

    std::size_t hit = scan_kth(l, (bl + 1) * k_block_bits);
    if (hit != npos)
        return hit;
    if (br > bl + 1) {
        struct walker {
            const bp_forest& f;
            std::size_t lb, rb;
            std::int64_t mn;
            std::uint64_t& k;
            std::size_t run(std::size_t node, std::size_t nl, std::size_t nr) const
            {
                if (nr < lb || nl > rb)
                    return npos;
                if (lb <= nl && nr <= rb) {
                    const seg_node& nd = f.m_seg[node];
                    const std::uint64_t c = static_cast<std::int64_t>(nd.mn) == mn ? nd.cnt : 0;
                    if (c < k) {
                        k -= c;
                        return npos;
                    }
                    if (nl == nr)
                        return nl;
                }
                if (nl == nr)
                    return npos;
                const std::size_t mid = nl + (nr - nl) / 2;
                const std::size_t left = run(2 * node, nl, mid);
                if (left != npos)
                    return left;
                return run(2 * node + 1, mid + 1, nr);
            }
        };
        const std::size_t blk = walker{*this, bl + 1, br - 1, mn, k}.run(1, 0, m_seg_base - 1);
        if (blk != npos)
            return scan_kth(blk * k_block_bits + 1, (blk + 1) * k_block_bits);
    }
    return scan_kth(br * k_block_bits + 1, r);
}

bool bp_forest::is_leaf(std::size_t v) const
{
    check_node(v, "is_leaf");
    return !m_bp.bit(open_of(v) + 1);
}

std::size_t bp_forest::parent(std::size_t v) const
{
    check_node(v, "parent");
    const std::size_t p = open_of(v);
    if (excess(p) == 2)
        return npos;
    return node_at(enclose_open(p));
}

std::size_t bp_forest::lca(std::size_t u, std::size_t v) const
{
    check_node(u, "lca");
    check_node(v, "lca");
    std::size_t pu = open_of(u);
    std::size_t pv = open_of(v);
    if (pu > pv) {
        std::swap(pu, pv);
        std::swap(u, v);
    }
    if (pv <= find_close(pu))
        return u;
    const min_cnt mc = range_min_leafclose(pu, pv);
    if (mc.mn <= 1)
        return npos; // u and v hang off different roots
    const std::size_t pos = range_rightmost_min(pu, pv, mc.mn);
    return parent(node_at(pos + 1));
}

std::size_t bp_forest::child_toward(std::size_t a, std::size_t v) const
{
    check_node(a, "child_toward");
    check_node(v, "child_toward");
    const std::size_t pa = open_of(a);
    const std::size_t pv = open_of(v);
    if (!(pa < pv && pv <= find_close(pa)))
        throw std::invalid_argument("child_toward: first argument is not a proper ancestor");
    return node_at(bwd_search(pv, excess(pa)) + 1);
}

std::size_t bp_forest::leaf_rank(std::size_t v) const
{
    check_node(v, "leaf_rank");
    return pattern_rank(m_leaf, false, open_of(v));
}

std::size_t bp_forest::leaf_select(std::size_t k) const
{
    return node_at(pattern_select(m_leaf, false, k));
}

std::size_t bp_forest::internal_rank(std::size_t v) const
{
    check_node(v, "internal_rank");
    return pattern_rank(m_int, true, open_of(v));
}

std::size_t bp_forest::internal_select(std::size_t k) const
{
    return node_at(pattern_select(m_int, true, k));
}

std::size_t bp_forest::leaf_children_left_of(std::size_t v) const
{
    check_node(v, "leaf_children_left_of");
    const std::size_t pv = open_of(v);
    const std::size_t parent_open = excess(pv) == 2 ? 1 : enclose_open(pv);
    if (pv == parent_open + 1)
        return 0;
    const min_cnt mc = range_min_leafclose(parent_open + 1, pv - 1);
    return mc.mn == excess(parent_open) ? mc.cnt : 0;
}

std::size_t bp_forest::leaf_child_select(std::size_t u, std::size_t p) const
{
    check_node(u, "leaf_child_select");
    const std::size_t pu = open_of(u);
    const std::size_t close = find_close(pu);
    if (p == 0 || close == pu + 1)
        throw std::out_of_range("leaf_child_select: no such leaf child");
    const std::size_t pos = kth_leafclose_at(pu + 1, close - 1, excess(pu), p);
    if (pos == npos)
        throw std::out_of_range("leaf_child_select: no such leaf child");
    return node_at(pos - 1);
}

std::size_t bp_forest::leaf_child_count(std::size_t u) const
{
    check_node(u, "leaf_child_count");
    const std::size_t pu = open_of(u);
    const std::size_t close = find_close(pu);
    if (close == pu + 1)
        return 0;
    const min_cnt mc = range_min_leafclose(pu + 1, close - 1);
    return mc.cnt;
}

bit_string bp_forest::to_parens() const
{
    bit_string out;
    for (std::size_t pos = 2; pos < m_bp.size(); ++pos)
        out.push_back(m_bp.bit(pos));
    return out;
}

std::string bp_forest::to_text() const
{
    std::string s;
    s.reserve(2 * m_n);
    for (std::size_t pos = 2; pos < m_bp.size(); ++pos)
        s.push_back(m_bp.bit(pos) ? '(' : ')');
    return s;
}

std::vector<std::size_t> bp_forest::to_parents() const
{
    std::vector<std::size_t> out(m_n);
    for (std::size_t v = 0; v < m_n; ++v)
        out[v] = parent(v);
    return out;
}

bp_size_report bp_forest::size_report() const
{
    bp_size_report rep;
    rep.paren_bits = 2 * static_cast<std::uint64_t>(m_n);
    std::uint64_t nav = 2; // wrapper pair
    nav += m_bp.size_report().directory_bits;
    for (const pattern_dir* d : {&m_leaf, &m_int})
        nav += 64 * d->super.size() + 16 * d->block.size() + 32 * d->samples.size();
    nav += (32 + 32 + 32) * static_cast<std::uint64_t>(m_nblocks);
    nav += 96 * static_cast<std::uint64_t>(m_seg.size());
    rep.nav_bits = nav;
    rep.total_bits = rep.paren_bits + rep.nav_bits;
    return rep;
}

} // namespace lrmkit
