#pragma once

#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace plexforge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A lower bound reported as log10 together with the expression it came
/// from. Bounds that are rational also carry their exact value.
struct LogBound {
    double log10_value = 0.0;
    std::string exact_form;
    std::optional<Rational> exact_value;
};

BigInt factorial(unsigned n);

/// log10 of a positive rational, evaluated at 50 significant digits.
double log10_exact(const Rational& value);

/// Completions of a k x n latin rectangle: n!^(n-k) (n-k)!^n / n^(n(n-k)).
LogBound extension_bound(int n, int k);

/// Step-type count (m/e^2)^(n^2) with n = 2^a m.
LogBound step_count_bound(int a, int m);

enum class SpeciesFloorMode { Quadratic, ThreeHalves };

/// Species lower bound for even n before the asymptotic simplification:
/// the square-count bound divided by 6 (n!)^3.
///   Quadratic:   (m/e^2)^(n^2) with m the odd part of n.
///   ThreeHalves: (s!)^n (n!)^s / n^(sn), s = floor(sqrt n).
LogBound species_floor(int n, SpeciesFloorMode mode);

} // namespace plexforge
