#pragma once

#include <cstdint>
#include <vector>

namespace lrmkit {

// lg C(n, k), exact to double precision via lgamma. Good enough for
// reporting; use ceil_log2_binomial when the integer ceiling matters.
double log2_binomial(std::uint64_t n, std::uint64_t k);

// ceil(lg C(n, k)) computed with exact integer arithmetic, so the result
// is never off by one at power-of-two boundaries.
std::uint64_t ceil_log2_binomial(std::uint64_t n, std::uint64_t k);

// lg(m!/(h_0! * h_1! * ...)) for a degree histogram h, via lgamma.
double log2_multinomial(std::uint64_t m, const std::vector<std::uint64_t>& h);

namespace detail {

// Minimal unsigned big integer: only what the bit-size computations need.
class biguint {
public:
    biguint() : m_limbs(1, 0) {}
    explicit biguint(std::uint64_t v) : m_limbs(1, v) { trim(); }

    void mul_small(std::uint64_t f);
    void div_small(std::uint64_t d); // requires exact divisibility in our usage
    std::uint64_t bit_length() const;
    bool is_power_of_two() const;

private:
    void trim();
    std::vector<std::uint64_t> m_limbs; // little endian, base 2^64
};

} // namespace detail

} // namespace lrmkit
