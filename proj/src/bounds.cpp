#include "plexforge/bounds.hpp"

#include <cmath>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "plexforge/error.hpp"

namespace plexforge {

namespace mp = boost::multiprecision;
using Decimal = mp::cpp_dec_float_50;

BigInt factorial(unsigned n)
{
    BigInt out = 1;
    for (unsigned i = 2; i <= n; ++i)
        out *= i;
    return out;
}

double log10_exact(const Rational& value)
{
    if (value <= 0)
        throw Error(ErrorCode::BadParams, "log10 of a nonpositive value");
    Decimal num(mp::numerator(value));
    Decimal den(mp::denominator(value));
    return static_cast<double>(mp::log10(num) - mp::log10(den));
}

LogBound extension_bound(int n, int k)
{
    if (n < 1 || k < 0 || k > n)
        throw Error(ErrorCode::BadParams, "need 0 <= k <= n");
    const unsigned free_rows = static_cast<unsigned>(n - k);
    BigInt num = mp::pow(factorial(n), free_rows) * mp::pow(factorial(free_rows), static_cast<unsigned>(n));
    BigInt den = mp::pow(BigInt(n), static_cast<unsigned>(n) * free_rows);
    Rational value(num, den);

    LogBound out;
    out.exact_form = std::to_string(n) + "!^" + std::to_string(free_rows) + " * " + std::to_string(free_rows) + "!^"
                     + std::to_string(n) + " / " + std::to_string(n) + "^" + std::to_string(n * free_rows);
    out.log10_value = log10_exact(value);
    out.exact_value = value;
    return out;
}

LogBound step_count_bound(int a, int m)
{
    if (a < 1 || m < 1 || m % 2 == 0)
        throw Error(ErrorCode::BadParams, "need a >= 1 and odd m");
    const long long n = (1LL << a) * m;
    Decimal e = mp::exp(Decimal(1));
    Decimal value = Decimal(n * n) * mp::log10(Decimal(m) / (e * e));

    LogBound out;
    out.exact_form = "(" + std::to_string(m) + "/e^2)^" + std::to_string(n * n);
    out.log10_value = static_cast<double>(value);
    return out;
}

LogBound species_floor(int n, SpeciesFloorMode mode)
{
    if (n < 2 || n % 2 != 0)
        throw Error(ErrorCode::BadParams, "species floor needs even n >= 2");
    const BigInt group_bound = 6 * mp::pow(factorial(static_cast<unsigned>(n)), 3);
    const std::string divisor = " / (6 * " + std::to_string(n) + "!^3)";
    LogBound out;
    if (mode == SpeciesFloorMode::ThreeHalves) {
        unsigned root = static_cast<unsigned>(std::sqrt(static_cast<double>(n)));
        while ((root + 1) * (root + 1) <= static_cast<unsigned>(n))
            ++root;
        while (root * root > static_cast<unsigned>(n))
            --root;
        BigInt num = mp::pow(factorial(root), static_cast<unsigned>(n)) * mp::pow(factorial(static_cast<unsigned>(n)), root);
        BigInt den = mp::pow(BigInt(n), root * static_cast<unsigned>(n)) * group_bound;
        Rational value(num, den);
        out.exact_form = std::to_string(root) + "!^" + std::to_string(n) + " * " + std::to_string(n) + "!^"
                         + std::to_string(root) + " / " + std::to_string(n) + "^" + std::to_string(root * n) + divisor;
        out.log10_value = log10_exact(value);
        out.exact_value = value;
        return out;
    }
    int a = 0;
    int m = n;
    while (m % 2 == 0) {
        m /= 2;
        ++a;
    }
    Decimal e = mp::exp(Decimal(1));
    Decimal value = Decimal(static_cast<long long>(n) * n) * mp::log10(Decimal(m) / (e * e)) - mp::log10(Decimal(group_bound));
    out.exact_form = "(" + std::to_string(m) + "/e^2)^" + std::to_string(n * n) + divisor;
    out.log10_value = static_cast<double>(value);
    return out;
}

} // namespace plexforge
