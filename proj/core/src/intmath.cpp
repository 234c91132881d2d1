#include "lrmkit/intmath.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace lrmkit {

namespace detail {

void biguint::mul_small(std::uint64_t f) {
    unsigned __int128 carry = 0;
    for (auto& limb : m_limbs) {
        unsigned __int128 prod = static_cast<unsigned __int128>(limb) * f + carry;
        limb = static_cast<std::uint64_t>(prod);
        carry = prod >> 64;
    }
    if (carry != 0) {
        m_limbs.push_back(static_cast<std::uint64_t>(carry));
    }
}

void biguint::div_small(std::uint64_t d) {
    unsigned __int128 rem = 0;
    for (std::size_t i = m_limbs.size(); i-- > 0;) {
        unsigned __int128 cur = (rem << 64) | m_limbs[i];
        m_limbs[i] = static_cast<std::uint64_t>(cur / d);
        rem = cur % d;
    }
    trim();
}

std::uint64_t biguint::bit_length() const {
    const std::uint64_t top = m_limbs.back();
    if (top == 0) {
        return 0; // the value is zero (limbs trimmed to a single zero)
    }
    return 64 * (m_limbs.size() - 1) + (64 - std::countl_zero(top));
}

bool biguint::is_power_of_two() const {
    bool seen = false;
    for (auto limb : m_limbs) {
        if (limb == 0) {
            continue;
        }
        if (seen || !std::has_single_bit(limb)) {
            return false;
        }
        seen = true;
    }
    return seen;
}

void biguint::trim() {
    while (m_limbs.size() > 1 && m_limbs.back() == 0) {
        m_limbs.pop_back();
    }
}

} // namespace detail

double log2_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        throw std::invalid_argument("log2_binomial: k > n");
    }
    static const double ln2 = std::log(2.0);
    return (std::lgamma(static_cast<double>(n) + 1.0) -
            std::lgamma(static_cast<double>(k) + 1.0) -
            std::lgamma(static_cast<double>(n - k) + 1.0)) /
           ln2;
}

std::uint64_t ceil_log2_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        throw std::invalid_argument("ceil_log2_binomial: k > n");
    }
    k = std::min(k, n - k);
    if (k == 0) {
        return 0;
    }
    detail::biguint c(1);
    // C(n, k) built as prod (n-k+i)/i; every intermediate value is itself
    // a binomial coefficient, so the divisions are exact.
    for (std::uint64_t i = 1; i <= k; ++i) {
        c.mul_small(n - k + i);
        c.div_small(i);
    }
    const std::uint64_t bits = c.bit_length();
    return c.is_power_of_two() ? bits - 1 : bits;
}

double log2_multinomial(std::uint64_t m, const std::vector<std::uint64_t>& h) {
    static const double ln2 = std::log(2.0);
    std::uint64_t total = 0;
    double acc = std::lgamma(static_cast<double>(m) + 1.0);
    for (auto cnt : h) {
        total += cnt;
        acc -= std::lgamma(static_cast<double>(cnt) + 1.0);
    }
    if (total != m) {
        throw std::invalid_argument("log2_multinomial: parts do not sum to m");
    }
    return acc / ln2;
}

} // namespace lrmkit
