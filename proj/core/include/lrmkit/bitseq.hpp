#pragma once

#include <cstdint>
#include <vector>

#include "lrmkit/bit_string.hpp"

namespace lrmkit {

struct bit_size_report {
    std::uint64_t payload_bits = 0;
    std::uint64_t directory_bits = 0;
    std::uint64_t total_bits = 0;
};

// Bit vector with rank/select directories kept alongside the raw bits.
//
// Positions are 1-based at this interface: bit(i) addresses B[1..n],
// rank1(i) counts ones among the first i bits (rank1(0) = 0), and
// select1(k) returns the position of the k-th one.
//
// Directory layout: absolute 64-bit counts every 4096 bits, 16-bit counts
// relative to those every 256 bits, and a sampled answer position every
// 512 occurrences per bit value to seed select scans.
class plain_bit_vector {
public:
    plain_bit_vector() = default;
    explicit plain_bit_vector(bit_string bits);

    std::size_t size() const noexcept { return m_bits.size(); }
    std::size_t ones() const noexcept { return m_ones; }

    bool bit(std::size_t i) const;            // 1 <= i <= n
    std::size_t rank1(std::size_t i) const;   // 0 <= i <= n
    std::size_t rank0(std::size_t i) const;
    std::size_t select1(std::size_t k) const; // 1 <= k <= ones()
    std::size_t select0(std::size_t k) const;

    const bit_string& bits() const noexcept { return m_bits; }
    bit_size_report size_report() const;

private:
    std::size_t select_scan(std::size_t k, bool value) const;

    bit_string m_bits;
    std::size_t m_ones = 0;
    std::vector<std::uint64_t> m_super;  // ones before each 4096-bit superblock
    std::vector<std::uint16_t> m_block;  // ones from superblock start to each 256-bit block
    std::vector<std::uint32_t> m_sample1; // position of every 512th one (0-based)
    std::vector<std::uint32_t> m_sample0;
};

// Entropy-compressed bit vector: 15-bit blocks stored as a 4-bit class
// (the block popcount) plus an offset identifying the block among all
// words of that popcount. Offsets take ceil(lg C(15, class)) bits, so the
// offset stream never exceeds the raw bits by more than one bit per block.
// Every 32 blocks the directory keeps an absolute rank and the bit address
// of the block's offset code, making queries a bounded class scan.
class compressed_bit_vector {
public:
    compressed_bit_vector() = default;
    explicit compressed_bit_vector(const bit_string& bits);

    std::size_t size() const noexcept { return m_size; }
    std::size_t ones() const noexcept { return m_ones; }

    bool bit(std::size_t i) const;
    std::size_t rank1(std::size_t i) const;
    std::size_t rank0(std::size_t i) const;
    std::size_t select1(std::size_t k) const;
    std::size_t select0(std::size_t k) const;

    bit_string decode_all() const;

    std::uint64_t class_bits() const noexcept { return 4 * num_blocks(); }
    std::uint64_t offset_bits() const noexcept { return m_offset_bits; }
    bit_size_report size_report() const;

private:
    std::size_t num_blocks() const noexcept { return (m_size + 14) / 15; }
    std::size_t block_width(std::size_t b) const noexcept;
    std::uint32_t block_class(std::size_t b) const noexcept;
    std::uint64_t read_offset(std::uint64_t bitpos, std::uint32_t width) const noexcept;
    // Decodes block b given the bit address of its offset code.
    std::uint32_t decode_block(std::size_t b, std::uint64_t offset_pos) const noexcept;
    // Walks blocks [sb*32, b), returning (ones skipped, offset bits skipped).
    void scan_to_block(std::size_t b, std::uint64_t& ones, std::uint64_t& offpos) const noexcept;
    std::size_t select_scan(std::size_t k, bool value) const;

    std::size_t m_size = 0;
    std::size_t m_ones = 0;
    std::uint64_t m_offset_bits = 0;
    std::vector<std::uint8_t> m_classes;   // packed 4-bit classes
    std::vector<std::uint64_t> m_offsets;  // packed offset codes
    std::vector<std::uint64_t> m_super_rank; // ones before each 32-block superblock
    std::vector<std::uint64_t> m_super_off;  // offset bit address per superblock
};

} // namespace lrmkit
