#pragma once

#include <string>
#include <utility>
#include <vector>

#include "plexforge/core.hpp"

namespace plexforge {

struct ResidueClass {
    long long value = 0;
    long long modulus = 1;

    friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

/// Throws BadDivisor unless m is an odd positive divisor of n.
void require_odd_divisor(int n, int m);

/// Delta_m: the least-absolute-value representative of
/// floor(s/m) - floor(r/m) - floor(c/m) modulo n/m. When n/m is even and
/// the residue is n/(2m), the positive representative is returned.
int delta(const Entry& entry, int n, int m);

/// Sum of delta over `set`, reduced modulo n/m.
ResidueClass plex_delta_sum(const EntrySet& set, int n, int m);

/// The residue n/(2m) mod n/m that the delta sum of every odd plex of an
/// even-order square must hit.
ResidueClass required_plex_residue(int n, int m);

struct Cell {
    int row = 0;
    int col = 0;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Cells violating floor(L_ij/m) == floor(i/m) + floor(j/m) (mod b).
std::vector<Cell> step_violations(const LatinSquare& square, int m, int b);

enum class CertificateMethod { StepType, BotRows, MatchingBound };
enum class Conclusion { Excluded, Inconclusive };

std::string to_string(CertificateMethod method);
std::string to_string(Conclusion conclusion);

/// A record that `square` (identified by digest) has no k-plex: every
/// k-plex would have delta_m sum in [sum_lo, sum_hi], and no integer in
/// that range lies in `required`.
struct Certificate {
    CertificateMethod method = CertificateMethod::MatchingBound;
    std::string square_digest;
    int k = 1;
    int m = 1;
    long long sum_lo = 0;
    long long sum_hi = 0;
    ResidueClass required;
    Conclusion conclusion = Conclusion::Inconclusive;
};

/// True iff some integer t in [lo, hi] satisfies t == required (mod modulus).
bool interval_hits_residue(long long lo, long long hi, const ResidueClass& required);

/// Whole-square step-type check: Excluded for every odd k when the square is
/// step-type for (n/m, m).
Certificate steptype_certificate(const LatinSquare& square, int k, int m);

/// Step-type on all but the last m*r rows, with k*m^2*r*(r-1) < n.
Certificate botrows_certificate(const LatinSquare& square, int k, int m, int r);

/// Bounds the delta_m sum over every selection with k cells per row and k
/// per column (symbol constraint dropped) by an exact integral optimum.
/// When that is inconclusive and `tighten` is set, the symbol quotas are
/// brought back through integer Lagrange multipliers: for any multipliers
/// the penalised optimum still bounds every k-plex, so the result stays
/// rigorous.
Certificate matching_certificate(const LatinSquare& square, int k, int m, bool tighten = true);

/// Re-checks a certificate from its recorded data alone: the residue data
/// must match (n, m), and an Excluded conclusion must be implied by the
/// bounds. When a square is supplied its digest must match too.
bool verify_certificate(const Certificate& cert, int order);
bool verify_certificate(const Certificate& cert, const LatinSquare& square);

struct RegularSelection {
    long long value = 0;
    std::vector<char> chosen; // n x n, row-major
};

/// Exact maximum of sum(weight[r][c]) over 0/1 selections with exactly k
/// cells in every row and every column. `weights` is n x n, row-major.
RegularSelection best_regular_selection(int n, int k, const std::vector<long long>& weights);
long long max_regular_selection(int n, int k, const std::vector<long long>& weights);

inline constexpr int kLagrangianIterations = 4000;

/// Upper bound on sum(weights) over the k-plexes of `square`, from integer
/// multipliers on the symbol quotas (target-level subgradient steps,
/// deterministic).
long long lagrangian_plex_bound(const LatinSquare& square, int k, const std::vector<long long>& weights,
                                int iterations);

} // namespace plexforge
