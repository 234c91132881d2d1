#include "lrmkit/bitseq.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace lrmkit {

namespace {

constexpr std::size_t k_super_bits = 4096;
constexpr std::size_t k_block_bits = 256;
constexpr std::size_t k_sample_every = 512;

constexpr std::size_t k_cblock = 15; // compressed block width
constexpr std::size_t k_csuper = 32; // blocks per compressed superblock

// C(a, b) for a, b <= 15, zero where b > a.
struct binom_table {
    std::uint32_t c[16][16] = {};
    std::uint8_t width[16][16] = {}; // ceil(lg C(a, b))
    constexpr binom_table() {
        for (int a = 0; a <= 15; ++a) {
            c[a][0] = 1;
            for (int b = 1; b <= a; ++b) {
                c[a][b] = c[a - 1][b - 1] + (b <= a - 1 ? c[a - 1][b] : 0);
            }
        }
        for (int a = 0; a <= 15; ++a) {
            for (int b = 0; b <= a; ++b) {
                std::uint32_t v = c[a][b];
                std::uint8_t w = 0;
                while ((std::uint32_t{1} << w) < v) {
                    ++w;
                }
                width[a][b] = w;
            }
        }
    }
};

constexpr binom_table k_binom{};

inline std::uint64_t low_mask(std::size_t bits) {
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

[[noreturn]] void throw_range(const char* what, std::size_t v, std::size_t hi) {
    throw std::out_of_range(std::string(what) + ": " + std::to_string(v) +
                            " not in [" + (*what == 'r' ? "0" : "1") + ", " +
                            std::to_string(hi) + "]");
}

} // namespace

// ---------------------------------------------------------------------
// plain_bit_vector
// ---------------------------------------------------------------------

plain_bit_vector::plain_bit_vector(bit_string bits) : m_bits(std::move(bits)) {
    const std::size_t n = m_bits.size();
    if (n >= (std::uint64_t{1} << 32)) {
        throw std::invalid_argument("plain_bit_vector: length exceeds supported range");
    }
    const std::size_t nwords = (n + 63) / 64;
    m_super.resize(n / k_super_bits + 1);
    m_block.resize(n / k_block_bits + 1);

    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < nwords; ++w) {
        const std::size_t bitpos = w * 64;
        const std::uint64_t word = m_bits.word(w);

        std::uint64_t rest = word;
        std::uint64_t before = acc;
        while (rest != 0) {
            const int b = std::countr_zero(rest);
            if (before % k_sample_every == 0) {
                m_sample1.push_back(static_cast<std::uint32_t>(bitpos + static_cast<std::size_t>(b)));
            }
            ++before;
            rest &= rest - 1;
        }
        // same walk over the complement; zeros before = bits before minus ones before
        const std::size_t valid = std::min<std::size_t>(64, n - bitpos);
        std::uint64_t zw = ~word & low_mask(valid);
        std::uint64_t zbefore = bitpos - acc;
        while (zw != 0) {
            const int b = std::countr_zero(zw);
            if (zbefore % k_sample_every == 0) {
                m_sample0.push_back(static_cast<std::uint32_t>(bitpos + static_cast<std::size_t>(b)));
            }
            ++zbefore;
            zw &= zw - 1;
        }
        acc += static_cast<std::uint64_t>(std::popcount(word));
    }
    m_ones = acc;

    // Directory entries are written per boundary, not per word, so the
    // trailing boundary at (or past) the last word is covered too.
    std::uint64_t sum = 0;
    std::size_t w = 0;
    for (std::size_t b = 0; b * k_block_bits <= n; ++b) {
        const std::size_t boundary_word = (b * k_block_bits) / 64;
        while (w < boundary_word) {
            sum += static_cast<std::uint64_t>(std::popcount(m_bits.word(w++)));
        }
        const std::size_t s = (b * k_block_bits) / k_super_bits;
        if ((b * k_block_bits) % k_super_bits == 0) {
            m_super[s] = sum;
        }
        m_block[b] = static_cast<std::uint16_t>(sum - m_super[s]);
    }
}

bool plain_bit_vector::bit(std::size_t i) const {
    if (i < 1 || i > size()) {
        throw_range("bit: position", i, size());
    }
    return m_bits.get(i - 1);
}

std::size_t plain_bit_vector::rank1(std::size_t i) const {
    if (i > size()) {
        throw_range("rank: prefix length", i, size());
    }
    std::uint64_t r = m_super[i / k_super_bits] + m_block[i / k_block_bits];
    const std::size_t first_word = (i / k_block_bits) * (k_block_bits / 64);
    for (std::size_t w = first_word; w < i / 64; ++w) {
        r += static_cast<std::uint64_t>(std::popcount(m_bits.word(w)));
    }
    if (i % 64 != 0) {
        r += static_cast<std::uint64_t>(std::popcount(m_bits.word(i / 64) & low_mask(i % 64)));
    }
    return static_cast<std::size_t>(r);
}

std::size_t plain_bit_vector::rank0(std::size_t i) const { return i - rank1(i); }

std::size_t plain_bit_vector::select_scan(std::size_t k, bool value) const {
    const auto& samples = value ? m_sample1 : m_sample0;
    const std::size_t n = size();
    std::size_t pos = samples[(k - 1) / k_sample_every]; // 0-based bit index
    std::size_t have = ((k - 1) / k_sample_every) * k_sample_every;

    // Skip whole superblocks, then whole blocks, using the rank directory.
    std::size_t sb = pos / k_super_bits;
    while ((sb + 1) * k_super_bits <= n) {
        const std::uint64_t ones = m_super[sb + 1];
        const std::uint64_t cnt = value ? ones : (sb + 1) * k_super_bits - ones;
        if (cnt >= k) {
            break;
        }
        have = static_cast<std::size_t>(cnt);
        pos = ++sb * k_super_bits;
    }
    std::size_t blk = pos / k_block_bits;
    while ((blk + 1) * k_block_bits <= n && (blk + 1) % (k_super_bits / k_block_bits) != 0) {
        const std::uint64_t ones = m_super[sb] + m_block[blk + 1];
        const std::uint64_t cnt = value ? ones : (blk + 1) * k_block_bits - ones;
        if (cnt >= k) {
            break;
        }
        have = static_cast<std::size_t>(cnt);
        pos = ++blk * k_block_bits;
    }
    // Word scan from the block boundary.
    std::size_t w = pos / 64;
    for (;;) {
        std::uint64_t word = m_bits.word(w);
        if (!value) {
            const std::size_t valid = n > w * 64 ? std::min<std::size_t>(64, n - w * 64) : 0;
            word = ~word & low_mask(valid);
        }
        if (w * 64 < pos) {
            word &= ~low_mask(pos - w * 64);
        }
        const int pc = std::popcount(word);
        if (have + static_cast<std::size_t>(pc) >= k) {
            std::size_t need = k - have;
            while (--need > 0) {
                word &= word - 1;
            }
            return w * 64 + static_cast<std::size_t>(std::countr_zero(word)) + 1;
        }
        have += static_cast<std::size_t>(pc);
        ++w;
        pos = w * 64;
    }
}

std::size_t plain_bit_vector::select1(std::size_t k) const {
    if (k < 1 || k > m_ones) {
        throw_range("select: occurrence", k, m_ones);
    }
    return select_scan(k, true);
}

std::size_t plain_bit_vector::select0(std::size_t k) const {
    if (k < 1 || k > size() - m_ones) {
        throw_range("select: occurrence", k, size() - m_ones);
    }
    return select_scan(k, false);
}

bit_size_report plain_bit_vector::size_report() const {
    bit_size_report r;
    r.payload_bits = size();
    r.directory_bits = 64 * m_super.size() + 16 * m_block.size() +
                       32 * (m_sample1.size() + m_sample0.size());
    r.total_bits = r.payload_bits + r.directory_bits;
    return r;
}

// ---------------------------------------------------------------------
// compressed_bit_vector
// ---------------------------------------------------------------------

std::size_t compressed_bit_vector::block_width(std::size_t b) const noexcept {
    const std::size_t start = b * k_cblock;
    return std::min(k_cblock, m_size - start);
}

std::uint32_t compressed_bit_vector::block_class(std::size_t b) const noexcept {
    const std::uint8_t byte = m_classes[b / 2];
    return (b % 2 == 0) ? (byte & 0x0f) : (byte >> 4);
}

compressed_bit_vector::compressed_bit_vector(const bit_string& bits) : m_size(bits.size()) {
    if (m_size >= (std::uint64_t{1} << 32)) {
        throw std::invalid_argument("compressed_bit_vector: length exceeds supported range");
    }
    const std::size_t nb = num_blocks();
    const std::size_t n_sb = (nb + k_csuper - 1) / k_csuper;
    m_classes.assign((nb + 1) / 2, 0);
    m_super_rank.resize(n_sb + 1);
    m_super_off.resize(n_sb + 1);

    std::uint64_t ones = 0;
    std::uint64_t offpos = 0;
    std::vector<std::uint64_t> codes;
    for (std::size_t b = 0; b < nb; ++b) {
        if (b % k_csuper == 0) {
            m_super_rank[b / k_csuper] = ones;
            m_super_off[b / k_csuper] = offpos;
        }
        const std::size_t w = block_width(b);
        std::uint32_t word = 0;
        for (std::size_t s = 0; s < w; ++s) {
            if (bits.get(b * k_cblock + s)) {
                word |= std::uint32_t{1} << s;
            }
        }
        const auto cls = static_cast<std::uint32_t>(std::popcount(word));
        m_classes[b / 2] |= static_cast<std::uint8_t>(cls << (b % 2 == 0 ? 0 : 4));

        // Combinadic rank of the block among all width-w words of its class.
        std::uint64_t off = 0;
        std::uint32_t rem = cls;
        for (std::size_t s = 0; s < w; ++s) {
            if ((word >> s) & 1) {
                off += k_binom.c[w - 1 - s][rem];
                --rem;
            }
        }
        const std::uint8_t width = k_binom.width[w][cls];
        if (width > 0) {
            const std::size_t word_idx = offpos / 64;
            const std::size_t shift = offpos % 64;
            while (codes.size() <= (offpos + width - 1) / 64) {
                codes.push_back(0);
            }
            codes[word_idx] |= off << shift;
            if (shift + width > 64) {
                codes[word_idx + 1] |= off >> (64 - shift);
            }
        }
        offpos += width;
        ones += cls;
    }
    // final sentinel simplifies select's binary search
    m_super_rank[n_sb] = ones;
    m_super_off[n_sb] = offpos;
    m_offsets = std::move(codes);
    m_offset_bits = offpos;
    m_ones = ones;
}

std::uint64_t compressed_bit_vector::read_offset(std::uint64_t bitpos, std::uint32_t width) const noexcept {
    if (width == 0) {
        return 0;
    }
    const std::size_t w = bitpos / 64;
    const std::size_t shift = bitpos % 64;
    std::uint64_t v = m_offsets[w] >> shift;
    if (shift + width > 64) {
        v |= m_offsets[w + 1] << (64 - shift);
    }
    return v & low_mask(width);
}

std::uint32_t compressed_bit_vector::decode_block(std::size_t b, std::uint64_t offset_pos) const noexcept {
    const std::size_t w = block_width(b);
    const std::uint32_t cls = block_class(b);
    std::uint64_t off = read_offset(offset_pos, k_binom.width[w][cls]);
    std::uint32_t word = 0;
    std::uint32_t rem = cls;
    for (std::size_t s = 0; s < w; ++s) {
        const std::uint32_t zero_side = k_binom.c[w - 1 - s][rem];
        if (off >= zero_side) {
            off -= zero_side;
            word |= std::uint32_t{1} << s;
            --rem;
        }
    }
    return word;
}

void compressed_bit_vector::scan_to_block(std::size_t b, std::uint64_t& ones,
                                          std::uint64_t& offpos) const noexcept {
    const std::size_t sb = b / k_csuper;
    ones = m_super_rank[sb];
    offpos = m_super_off[sb];
    for (std::size_t j = sb * k_csuper; j < b; ++j) {
        const std::uint32_t cls = block_class(j);
        ones += cls;
        offpos += k_binom.width[block_width(j)][cls];
    }
}

bool compressed_bit_vector::bit(std::size_t i) const {
    if (i < 1 || i > m_size) {
        throw_range("bit: position", i, m_size);
    }
    const std::size_t b = (i - 1) / k_cblock;
    std::uint64_t ones = 0, offpos = 0;
    scan_to_block(b, ones, offpos);
    return (decode_block(b, offpos) >> ((i - 1) % k_cblock)) & 1;
}

std::size_t compressed_bit_vector::rank1(std::size_t i) const {
    if (i > m_size) {
        throw_range("rank: prefix length", i, m_size);
    }
    if (i == 0) {
        return 0;
    }
    const std::size_t b = (i - 1) / k_cblock;
    std::uint64_t ones = 0, offpos = 0;
    scan_to_block(b, ones, offpos);
    const std::uint32_t word = decode_block(b, offpos);
    const std::size_t within = i - b * k_cblock;
    return static_cast<std::size_t>(ones) +
           static_cast<std::size_t>(std::popcount(word & static_cast<std::uint32_t>(low_mask(within))));
}

std::size_t compressed_bit_vector::rank0(std::size_t i) const { return i - rank1(i); }

std::size_t compressed_bit_vector::select_scan(std::size_t k, bool value) const {
    // Superblock ranks are monotone; binary search the last superblock
    // boundary whose prefix count is below k, then walk its classes.
    const std::size_t nb = num_blocks();
    const auto prefix = [&](std::size_t s) -> std::uint64_t {
        const std::size_t bits = std::min(s * k_csuper * k_cblock, m_size);
        return value ? m_super_rank[s] : bits - m_super_rank[s];
    };
    std::size_t lo = 0, hi = m_super_rank.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi + 1) / 2;
        if (prefix(mid) < k) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    std::uint64_t have = prefix(lo);
    std::uint64_t offpos = m_super_off[lo];
    for (std::size_t b = lo * k_csuper; b < nb; ++b) {
        const std::size_t w = block_width(b);
        const std::uint32_t cls = block_class(b);
        const std::uint64_t in_block = value ? cls : w - cls;
        if (have + in_block >= k) {
            std::uint32_t word = decode_block(b, offpos);
            if (!value) {
                word = ~word & static_cast<std::uint32_t>(low_mask(w));
            }
            std::uint64_t need = k - have;
            while (--need > 0) {
                word &= word - 1;
            }
            return b * k_cblock + static_cast<std::size_t>(std::countr_zero(word)) + 1;
        }
        have += in_block;
        offpos += k_binom.width[w][cls];
    }
    return 0; // unreachable: k validated by callers
}

std::size_t compressed_bit_vector::select1(std::size_t k) const {
    if (k < 1 || k > m_ones) {
        throw_range("select: occurrence", k, m_ones);
    }
    return select_scan(k, true);
}

std::size_t compressed_bit_vector::select0(std::size_t k) const {
    if (k < 1 || k > m_size - m_ones) {
        throw_range("select: occurrence", k, m_size - m_ones);
    }
    return select_scan(k, false);
}

bit_string compressed_bit_vector::decode_all() const {
    bit_string out;
    out.reserve(m_size);
    std::uint64_t offpos = 0;
    const std::size_t nb = num_blocks();
    for (std::size_t b = 0; b < nb; ++b) {
        const std::size_t w = block_width(b);
        const std::uint32_t word = decode_block(b, offpos);
        for (std::size_t s = 0; s < w; ++s) {
            out.push_back((word >> s) & 1);
        }
        offpos += k_binom.width[w][block_class(b)];
    }
    return out;
}

bit_size_report compressed_bit_vector::size_report() const {
    bit_size_report r;
    r.payload_bits = class_bits() + offset_bits();
    r.directory_bits = 128 * m_super_rank.size();
    r.total_bits = r.payload_bits + r.directory_bits;
    return r;
}

} // namespace lrmkit
