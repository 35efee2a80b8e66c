#include "doctest.h"

#include <cmath>

#include "plexforge/bounds.hpp"

using namespace plexforge;

namespace {

// log10(x!) through lgamma in extended precision, independent of the
// exact rationals.
long double log10_fact(int x)
{
    return std::lgamma(static_cast<long double>(x) + 1) / std::log(10.0L);
}

constexpr double kTol = 1e-9;

} // namespace

TEST_CASE("factorial")
{
    CHECK(factorial(0) == 1);
    CHECK(factorial(8) == 40320);
    CHECK(factorial(25) == BigInt("15511210043330985984000000"));
}

TEST_CASE("extension bound: exact value at n = 8, k = 5")
{
    const auto b = extension_bound(8, 5);
    REQUIRE(b.exact_value);
    BigInt f8 = factorial(8);
    BigInt num = f8 * f8 * f8;
    for (int i = 0; i < 8; ++i)
        num *= 6;
    BigInt den = 1;
    for (int i = 0; i < 24; ++i)
        den *= 8;
    CHECK(*b.exact_value == Rational(num, den));
    CHECK(b.log10_value == doctest::Approx(-1.6324).epsilon(1e-4));
    CHECK(b.exact_form == "8!^3 * 3!^8 / 8^24");
}

TEST_CASE("extension bound: full rectangle gives 1")
{
    for (int n = 1; n <= 10; ++n) {
        const auto b = extension_bound(n, n);
        CHECK(*b.exact_value == 1);
        CHECK(b.log10_value == 0.0);
    }
}

TEST_CASE("extension bound agrees with an lgamma evaluation for n <= 30")
{
    for (int n = 1; n <= 30; ++n)
        for (int k = 0; k <= n; ++k) {
            const int f = n - k;
            const long double expect =
                f * log10_fact(n) + n * log10_fact(f) - static_cast<long double>(n) * f * std::log10(static_cast<long double>(n));
            CHECK(std::fabs(extension_bound(n, k).log10_value - static_cast<double>(expect)) < kTol);
            CHECK(std::fabs(log10_exact(*extension_bound(n, k).exact_value) - extension_bound(n, k).log10_value) < kTol);
        }
}

TEST_CASE("step-type count bound")
{
    const long double log_e2 = 2.0L / std::log(10.0L);
    CHECK(step_count_bound(1, 1).log10_value == doctest::Approx(-3.4744).epsilon(1e-4));
    CHECK(std::fabs(step_count_bound(1, 1).log10_value - static_cast<double>(-4 * log_e2)) < kTol);
    CHECK(std::fabs(step_count_bound(1, 3).log10_value - static_cast<double>(36 * (std::log10(3.0L) - log_e2))) < kTol);
    CHECK(step_count_bound(1, 3).log10_value == doctest::Approx(-14.093).epsilon(1e-4));
    CHECK_FALSE(step_count_bound(1, 3).exact_value.has_value());
    CHECK_THROWS(step_count_bound(0, 3));
    CHECK_THROWS(step_count_bound(1, 4));
}

TEST_CASE("species floor")
{
    // Three-halves at n = 8: (2!)^8 (8!)^2 / 8^16 / (6 (8!)^3).
    const auto b = species_floor(8, SpeciesFloorMode::ThreeHalves);
    REQUIRE(b.exact_value);
    BigInt f8 = factorial(8);
    const Rational expect(BigInt(256) * f8 * f8, BigInt(1) << 48);
    CHECK(*b.exact_value == expect / Rational(6 * f8 * f8 * f8));
    const long double oracle =
        8 * std::log10(2.0L) + 2 * log10_fact(8) - 48 * std::log10(2.0L) - std::log10(6.0L) - 3 * log10_fact(8);
    CHECK(std::fabs(b.log10_value - static_cast<double>(oracle)) < kTol);
    CHECK(std::fabs(log10_exact(*b.exact_value) - b.log10_value) < kTol);

    // Quadratic at n = 12: odd part 3.
    const auto q = species_floor(12, SpeciesFloorMode::Quadratic);
    const long double log_e2 = 2.0L / std::log(10.0L);
    const long double qo = 144 * (std::log10(3.0L) - log_e2) - std::log10(6.0L) - 3 * log10_fact(12);
    CHECK(std::fabs(q.log10_value - static_cast<double>(qo)) < kTol);
    CHECK_THROWS(species_floor(9, SpeciesFloorMode::Quadratic));
}
