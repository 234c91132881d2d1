#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lrmkit/intmath.hpp"

using lrmkit::ceil_log2_binomial;
using lrmkit::log2_binomial;
using lrmkit::log2_multinomial;

TEST_CASE("ceil_log2_binomial on small exact values")
{
    CHECK(ceil_log2_binomial(0, 0) == 0);
    CHECK(ceil_log2_binomial(5, 0) == 0);
    CHECK(ceil_log2_binomial(5, 5) == 0);
    CHECK(ceil_log2_binomial(2, 1) == 1);   // C = 2
    CHECK(ceil_log2_binomial(4, 2) == 3);   // C = 6
    CHECK(ceil_log2_binomial(8, 2) == 5);   // C = 28
    CHECK(ceil_log2_binomial(16, 1) == 4);  // C = 16, a power of two
    CHECK(ceil_log2_binomial(10, 5) == 8);  // C = 252
    CHECK(ceil_log2_binomial(64, 32) == 61);
}

TEST_CASE("ceil_log2_binomial matches a floating-point estimate")
{
    for (std::uint64_t n : {1u, 7u, 15u, 30u, 64u, 100u, 1000u, 100000u}) {
        for (std::uint64_t k : {std::uint64_t{0}, std::uint64_t{1}, n / 3, n / 2, n}) {
            const double lg = log2_binomial(n, k);
            const double c = static_cast<double>(ceil_log2_binomial(n, k));
            CHECK(c >= lg - 1e-6);
            CHECK(c <= lg + 1.0 + 1e-6);
        }
    }
}

TEST_CASE("log2_binomial is symmetric and monotone in n")
{
    CHECK(log2_binomial(10, 3) == doctest::Approx(log2_binomial(10, 7)));
    CHECK(log2_binomial(6, 3) == doctest::Approx(std::log2(20.0)));
    CHECK(log2_binomial(100, 50) > log2_binomial(99, 50));
    CHECK_THROWS_AS((void)log2_binomial(3, 4), std::invalid_argument);
    CHECK_THROWS_AS((void)ceil_log2_binomial(3, 4), std::invalid_argument);
}

TEST_CASE("log2_multinomial agrees with direct factorial ratios")
{
    // 10! / (5! 4! 1!) = 1260
    CHECK(log2_multinomial(10, {5, 4, 1}) == doctest::Approx(std::log2(1260.0)));
    // degenerate: one part
    CHECK(log2_multinomial(7, {7}) == doctest::Approx(0.0));
    // multinomial(4; 1,1,1,1) = 24
    CHECK(log2_multinomial(4, {1, 1, 1, 1}) == doctest::Approx(std::log2(24.0)));
    CHECK_THROWS_AS((void)log2_multinomial(5, {3, 3}), std::invalid_argument);
}
