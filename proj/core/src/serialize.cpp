#include <lrmkit/serialize.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>

#include <lrmkit/errors.hpp>

namespace lrmkit {

// ---------------------------------------------------------------- text arrays

std::vector<std::int64_t> read_int_array(std::istream& in)
{
    std::vector<std::int64_t> out;
    std::string tok;
    std::size_t line = 1, col = 0;
    std::size_t tline = 1, tcol = 1;

    const auto flush = [&]() {
        if (tok.empty())
            return;
        std::int64_t v = 0;
        const std::from_chars_result res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw parse_error("bad integer '" + tok + "'", tline, tcol);
        out.push_back(v);
        tok.clear();
    };

    int ch;
    while ((ch = in.get()) != std::char_traits<char>::eof()) {
        ++col;
        const char c = static_cast<char>(ch);
        if (c == '\n') {
            flush();
            ++line;
            col = 0;
        } else if (c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f') {
            flush();
        } else if ((c >= '0' && c <= '9') || (c == '-' && tok.empty())) {
            if (tok.empty()) {
                tline = line;
                tcol = col;
            }
            tok.push_back(c);
        } else {
            throw parse_error(std::string("unexpected character '") + c + "'", line, col);
        }
    }
    flush();
    return out;
}

void write_int_array(std::ostream& out, const std::vector<std::int64_t>& v)
{
    for (const std::int64_t x : v)
        out << x << '\n';
}

std::vector<std::int64_t> load_int_array(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw io_error("cannot open " + path);
    return read_int_array(f);
}

void store_int_array(const std::string& path, const std::vector<std::int64_t>& v)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw io_error("cannot open " + path);
    write_int_array(f, v);
    f.flush();
    if (!f)
        throw io_error("write failed: " + path);
}

// ------------------------------------------------------------- LRMK container

namespace {

constexpr char k_magic[4] = {'L', 'R', 'M', 'K'};
constexpr std::uint8_t k_version = 1;

void put_u8(std::string& out, std::uint8_t v) { out.push_back(static_cast<char>(v)); }

void put_u64(std::string& out, std::uint64_t v)
{
    for (int b = 0; b < 8; ++b)
        out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

void put_i64(std::string& out, std::int64_t v) { put_u64(out, static_cast<std::uint64_t>(v)); }

void put_bits(std::string& out, const bit_string& b)
{
    put_u64(out, b.size());
    const std::size_t nbytes = (b.size() + 7) / 8;
    for (std::size_t i = 0; i < nbytes; ++i)
        out.push_back(static_cast<char>((b.word(i / 8) >> (8 * (i % 8))) & 0xFF));
}

void write_container(std::ostream& out, lrmk_type type, std::uint8_t flags,
                     const std::string& payload)
{
    std::string head;
    head.append(k_magic, 4);
    put_u8(head, k_version);
    put_u8(head, static_cast<std::uint8_t>(type));
    put_u8(head, flags);
    put_u64(head, payload.size());
    out.write(head.data(), static_cast<std::streamsize>(head.size()));
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out)
        throw io_error("container write failed");
}

struct header {
    lrmk_type type;
    std::uint8_t flags;
    std::uint64_t payload_len;
};

std::uint8_t raw_u8(std::istream& in)
{
    const int c = in.get();
    if (c == std::char_traits<char>::eof())
        throw io_error("truncated container");
    return static_cast<std::uint8_t>(c);
}

header read_header(std::istream& in)
{
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, k_magic, 4) != 0)
        throw io_error("not an LRMK container");
    const std::uint8_t version = raw_u8(in);
    if (version != k_version)
        throw io_error("unsupported container version " + std::to_string(version));
    const std::uint8_t type = raw_u8(in);
    if (type < 1 || type > 5)
        throw io_error("unknown container type " + std::to_string(type));
    header h;
    h.type = static_cast<lrmk_type>(type);
    h.flags = raw_u8(in);
    h.payload_len = 0;
    for (int b = 0; b < 8; ++b)
        h.payload_len |= static_cast<std::uint64_t>(raw_u8(in)) << (8 * b);
    return h;
}

header expect_header(std::istream& in, lrmk_type want)
{
    const header h = read_header(in);
    if (h.type != want)
        throw io_error("container holds type " +
                       std::to_string(static_cast<unsigned>(h.type)) + ", expected " +
                       std::to_string(static_cast<unsigned>(want)));
    return h;
}

// payload cursor; every read is charged against the declared length
struct reader {
    std::istream& in;
    std::uint64_t budget;

    std::uint8_t u8()
    {
        if (budget == 0)
            throw io_error("section overruns the declared payload");
        --budget;
        return raw_u8(in);
    }

    std::uint64_t u64()
    {
        std::uint64_t v = 0;
        for (int b = 0; b < 8; ++b)
            v |= static_cast<std::uint64_t>(u8()) << (8 * b);
        return v;
    }

    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }

    bit_string bits()
    {
        const std::uint64_t nbits = u64();
        const std::uint64_t nbytes = (nbits + 7) / 8;
        if (nbytes > budget)
            throw io_error("bit string overruns the declared payload");
        bit_string b;
        b.reserve(nbits);
        std::uint8_t cur = 0;
        for (std::uint64_t i = 0; i < nbits; ++i) {
            if (i % 8 == 0)
                cur = u8();
            b.push_back(((cur >> (i % 8)) & 1) != 0);
        }
        if (nbits % 8 != 0 && (cur >> (nbits % 8)) != 0)
            throw io_error("nonzero padding bits");
        return b;
    }

    void finish()
    {
        if (budget != 0)
            throw io_error("payload longer than its sections");
        if (in.get() != std::char_traits<char>::eof())
            throw io_error("trailing bytes after the container");
    }
};

bp_forest parens_or_io(const bit_string& parens, const char* what)
{
    try {
        return bp_forest::from_parens(parens);
    } catch (const structure_error& e) {
        throw io_error(std::string(what) + ": " + e.what());
    }
}

void reject_flags(const header& h)
{
    if (h.flags != 0)
        throw io_error("unexpected flag bits");
}

bit_string raw_heads(const compressed_bit_vector& heads)
{
    bit_string b;
    b.reserve(heads.size());
    for (std::size_t i = 1; i <= heads.size(); ++i)
        b.push_back(heads.bit(i));
    return b;
}

plain_rmq_index load_plain_body(reader& r)
{
    const std::uint64_t n = r.u64();
    const bit_string parens = r.bits();
    r.finish();
    try {
        plain_rmq_index idx(parens_or_io(parens, "invalid tree"));
        if (idx.size() != n)
            throw io_error("tree size disagrees with the header");
        return idx;
    } catch (const structure_error& e) {
        throw io_error(std::string("invalid index: ") + e.what());
    }
}

strict_runs_rmq_index load_strict_body(reader& r)
{
    const std::uint64_t n = r.u64();
    const bit_string heads = r.bits();
    const bit_string parens = r.bits();
    r.finish();
    if (heads.size() != n)
        throw io_error("head bits disagree with the header");
    try {
        return strict_runs_rmq_index(heads, parens_or_io(parens, "invalid heads tree"));
    } catch (const structure_error& e) {
        throw io_error(std::string("invalid index: ") + e.what());
    }
}

runs_rmq_index load_runs_body(reader& r)
{
    const std::uint64_t n = r.u64();
    const bit_string heads = r.bits();
    const bit_string parens = r.bits();
    r.finish();
    if (heads.size() != n)
        throw io_error("head bits disagree with the header");
    try {
        return runs_rmq_index(heads, parens_or_io(parens, "invalid heads tree"));
    } catch (const structure_error& e) {
        throw io_error(std::string("invalid index: ") + e.what());
    }
}

} // namespace

void save(std::ostream& out, const lrm_tree& t)
{
    std::string p;
    put_u64(p, t.n());
    put_bits(p, t.bp().to_parens());
    write_container(out, lrmk_type::minima_tree, 0, p);
}

void save(std::ostream& out, const plain_rmq_index& idx)
{
    std::string p;
    put_u64(p, idx.size());
    put_bits(p, idx.tree().to_parens());
    write_container(out, lrmk_type::rmq_plain, 0, p);
}

void save(std::ostream& out, const strict_runs_rmq_index& idx)
{
    std::string p;
    put_u64(p, idx.size());
    put_bits(p, raw_heads(idx.heads()));
    put_bits(p, idx.heads_index().tree().to_parens());
    write_container(out, lrmk_type::rmq_strict_runs, 0, p);
}

void save(std::ostream& out, const runs_rmq_index& idx)
{
    std::string p;
    put_u64(p, idx.size());
    put_bits(p, raw_heads(idx.heads()));
    put_bits(p, idx.heads_index().tree().to_parens());
    write_container(out, lrmk_type::rmq_runs, 0, p);
}

void save(std::ostream& out, const perm_code& c)
{
    std::string p;
    put_u64(p, c.size());
    put_u64(p, c.parts());
    put_bits(p, c.forest().to_parens());

    const merge_tree& plan = c.plan();
    std::string shape;
    std::vector<std::size_t> pre_internals;
    std::uint64_t tokens = 0;
    if (c.parts() > 0) {
        std::vector<std::size_t> stack{plan.root()};
        while (!stack.empty()) {
            const std::size_t id = stack.back();
            stack.pop_back();
            ++tokens;
            if (plan.is_leaf(id)) {
                put_i64(shape, static_cast<std::int64_t>(id));
            } else {
                put_i64(shape, -1);
                pre_internals.push_back(id);
                const merge_tree::merge_node nd = plan.internals[id - plan.leaf_count];
                stack.push_back(nd.right);
                stack.push_back(nd.left);
            }
        }
    }
    put_u64(p, tokens);
    p += shape;
    put_u64(p, pre_internals.size());
    for (const std::size_t id : pre_internals)
        put_bits(p, c.node_bits()[id - plan.leaf_count].bits());

    std::uint8_t flags = 0;
    if (c.has_tree()) {
        flags |= 1;
        put_bits(p, c.tree_index()->tree().to_parens());
    }
    write_container(out, lrmk_type::permutation, flags, p);
}

lrm_tree load_minima_tree(std::istream& in)
{
    const header h = expect_header(in, lrmk_type::minima_tree);
    reject_flags(h);
    reader r{in, h.payload_len};
    const std::uint64_t n = r.u64();
    const bit_string parens = r.bits();
    r.finish();
    try {
        lrm_tree t = lrm_tree::from_bp(parens_or_io(parens, "invalid tree"));
        if (t.n() != n)
            throw io_error("node count disagrees with the header");
        return t;
    } catch (const structure_error& e) {
        throw io_error(std::string("invalid minima tree: ") + e.what());
    }
}

plain_rmq_index load_rmq_plain(std::istream& in)
{
    const header h = expect_header(in, lrmk_type::rmq_plain);
    reject_flags(h);
    reader r{in, h.payload_len};
    return load_plain_body(r);
}

strict_runs_rmq_index load_rmq_strict_runs(std::istream& in)
{
    const header h = expect_header(in, lrmk_type::rmq_strict_runs);
    reject_flags(h);
    reader r{in, h.payload_len};
    return load_strict_body(r);
}

runs_rmq_index load_rmq_runs(std::istream& in)
{
    const header h = expect_header(in, lrmk_type::rmq_runs);
    reject_flags(h);
    reader r{in, h.payload_len};
    return load_runs_body(r);
}

any_rmq_index load_any_rmq(std::istream& in)
{
    const header h = read_header(in);
    reject_flags(h);
    reader r{in, h.payload_len};
    switch (h.type) {
    case lrmk_type::rmq_plain:
        return load_plain_body(r);
    case lrmk_type::rmq_strict_runs:
        return load_strict_body(r);
    case lrmk_type::rmq_runs:
        return load_runs_body(r);
    default:
        throw io_error("container does not hold an index");
    }
}

perm_code load_perm_code(std::istream& in)
{
    const header h = expect_header(in, lrmk_type::permutation);
    if (h.flags > 1)
        throw io_error("unexpected flag bits");
    reader r{in, h.payload_len};
    const std::uint64_t n = r.u64();
    const std::uint64_t rho = r.u64();
    bp_forest forest = parens_or_io(r.bits(), "invalid partition forest");
    if (forest.leaf_count() != n || forest.internal_count() != rho)
        throw io_error("forest disagrees with the declared counts");

    const std::uint64_t tokens = r.u64();
    merge_tree plan;
    const std::size_t nint = rho > 0 ? static_cast<std::size_t>(rho) - 1 : 0;
    std::vector<std::size_t> creation(nint); // preorder internal index -> slot
    std::vector<std::uint32_t> ldepth(rho, 0);

    if (rho == 0) {
        if (tokens != 0)
            throw io_error("merge shape on an empty code");
    } else {
        if (tokens != 2 * rho - 1)
            throw io_error("merge shape has the wrong token count");

        struct slot {
            bool leaf;
            std::size_t idx;
        };
        std::vector<std::array<slot, 2>> ch(nint);
        std::vector<std::uint8_t> filled(nint, 0);
        std::vector<std::uint32_t> idepth(nint, 0);
        std::vector<std::uint8_t> leaf_seen(rho, 0);
        std::vector<std::size_t> stk;
        std::size_t next_pre = 0;
        std::size_t leaves = 0;

        for (std::uint64_t tk = 0; tk < tokens; ++tk) {
            const std::int64_t raw = r.i64();
            slot s;
            if (raw == -1) {
                if (next_pre == nint)
                    throw io_error("merge shape holds too many nodes");
                s = slot{false, next_pre};
            } else {
                if (raw < 0 || raw >= static_cast<std::int64_t>(rho) ||
                    leaf_seen[static_cast<std::size_t>(raw)])
                    throw io_error("merge shape names a bad leaf");
                leaf_seen[static_cast<std::size_t>(raw)] = 1;
                s = slot{true, static_cast<std::size_t>(raw)};
                ++leaves;
            }
            std::uint32_t depth = 0;
            if (tk > 0) {
                if (stk.empty())
                    throw io_error("merge shape is not one tree");
                const std::size_t par = stk.back();
                depth = idepth[par] + 1;
                ch[par][filled[par]] = s;
                if (++filled[par] == 2)
                    stk.pop_back();
            }
            if (s.leaf) {
                ldepth[s.idx] = depth;
            } else {
                idepth[next_pre] = depth;
                stk.push_back(next_pre);
                ++next_pre;
            }
        }
        if (!stk.empty() || next_pre != nint || leaves != rho)
            throw io_error("merge shape is not one tree");

        // creation ids must put children before parents: deeper first
        std::vector<std::size_t> order(nint);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return idepth[x] > idepth[y];
        });
        for (std::size_t k = 0; k < nint; ++k)
            creation[order[k]] = k;

        plan.leaf_count = static_cast<std::size_t>(rho);
        plan.internals.resize(nint);
        plan.parent.assign(plan.leaf_count + nint, merge_tree::npos);
        plan.weight.assign(plan.leaf_count + nint, 0);
        for (std::size_t s = 1; s <= rho; ++s)
            plan.weight[s - 1] = forest.leaf_child_count(forest.internal_select(s));
        const auto to_id = [&](slot s) {
            return s.leaf ? s.idx : plan.leaf_count + creation[s.idx];
        };
        for (std::size_t p = 0; p < nint; ++p) {
            const std::size_t id = plan.leaf_count + creation[p];
            const std::size_t left = to_id(ch[p][0]);
            const std::size_t right = to_id(ch[p][1]);
            plan.internals[creation[p]] = {left, right};
            plan.parent[left] = id;
            plan.parent[right] = id;
        }
        for (std::size_t k = 0; k < nint; ++k) {
            const merge_tree::merge_node nd = plan.internals[k];
            plan.weight[plan.leaf_count + k] =
                plan.weight[nd.left] + plan.weight[nd.right];
        }
        plan.leaf_depth = ldepth;
        for (std::size_t s = 0; s < rho; ++s) {
            plan.weighted_path_length += plan.weight[s] * ldepth[s];
            plan.max_leaf_depth = std::max(plan.max_leaf_depth, ldepth[s]);
        }
    }

    const std::uint64_t payload_count = r.u64();
    if (payload_count != nint)
        throw io_error("wrong node payload count");
    std::vector<bit_string> node_bits(nint);
    for (std::size_t p = 0; p < nint; ++p)
        node_bits[creation[p]] = r.bits();

    std::optional<bp_forest> tree_bp;
    if ((h.flags & 1) != 0)
        tree_bp = parens_or_io(r.bits(), "invalid retained tree");
    r.finish();

    try {
        return perm_code(std::move(forest), std::move(plan), std::move(node_bits),
                         std::move(tree_bp));
    } catch (const structure_error& e) {
        throw io_error(std::string("invalid permutation code: ") + e.what());
    }
}

} // namespace lrmkit
