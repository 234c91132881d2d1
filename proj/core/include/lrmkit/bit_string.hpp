#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lrmkit {

// Growable bit container backed by 64-bit words, LSB first within a word.
// Indexing here is 0-based; the query structures built on top expose the
// 1-based interface.
class bit_string {
public:
    bit_string() = default;

    explicit bit_string(std::size_t n) : m_size(n), m_words((n + 63) / 64, 0) {}

    static bit_string from_string(std::string_view s) {
        bit_string b;
        b.reserve(s.size());
        for (char c : s) {
            if (c == '0') {
                b.push_back(false);
            } else if (c == '1') {
                b.push_back(true);
            } else {
                throw std::invalid_argument("bit_string: expected '0' or '1'");
            }
        }
        return b;
    }

    void reserve(std::size_t n) { m_words.reserve((n + 63) / 64); }

    void push_back(bool b) {
        if (m_size % 64 == 0) {
            m_words.push_back(0);
        }
        if (b) {
            m_words[m_size / 64] |= std::uint64_t{1} << (m_size % 64);
        }
        ++m_size;
    }

    void pop_back() {
        check(m_size - 1); // throws on empty via unsigned wrap
        --m_size;
        m_words[m_size / 64] &= ~(std::uint64_t{1} << (m_size % 64));
        if (m_size % 64 == 0) {
            m_words.pop_back();
        }
    }

    void set(std::size_t i, bool b) {
        check(i);
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (b) {
            m_words[i / 64] |= mask;
        } else {
            m_words[i / 64] &= ~mask;
        }
    }

    bool get(std::size_t i) const {
        check(i);
        return (m_words[i / 64] >> (i % 64)) & 1;
    }

    std::size_t size() const noexcept { return m_size; }
    bool empty() const noexcept { return m_size == 0; }

    std::size_t popcount() const noexcept {
        std::size_t c = 0;
        for (auto w : m_words) {
            c += static_cast<std::size_t>(std::popcount(w));
        }
        return c;
    }

    // Word w with positions beyond size() guaranteed zero.
    std::uint64_t word(std::size_t w) const noexcept {
        return w < m_words.size() ? m_words[w] : 0;
    }

    std::size_t num_words() const noexcept { return m_words.size(); }

    std::string to_string() const {
        std::string s;
        s.reserve(m_size);
        for (std::size_t i = 0; i < m_size; ++i) {
            s.push_back(get(i) ? '1' : '0');
        }
        return s;
    }

    bool operator==(const bit_string& o) const noexcept {
        return m_size == o.m_size && m_words == o.m_words;
    }

private:
    void check(std::size_t i) const {
        if (i >= m_size) {
            throw std::out_of_range("bit_string: index " + std::to_string(i) +
                                    " out of range [0, " + std::to_string(m_size) + ")");
        }
    }

    std::size_t m_size = 0;
    std::vector<std::uint64_t> m_words;
};

} // namespace lrmkit
