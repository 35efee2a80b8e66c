#include "plexforge/analyze.hpp"

#include <algorithm>
#include <limits>
#include <cmath>

namespace plexforge {

void require_odd_divisor(int n, int m)
{
    if (m < 1 || m % 2 == 0 || n % m != 0)
        throw Error(ErrorCode::BadDivisor, std::to_string(m) + " is not an odd divisor of " + std::to_string(n));
}

int delta(const Entry& entry, int n, int m)
{
    require_odd_divisor(n, m);
    const int q = n / m;
    int res = reduce_mod(entry.sym / m - entry.row / m - entry.col / m, q);
    return 2 * res > q ? res - q : res;
}

ResidueClass plex_delta_sum(const EntrySet& set, int n, int m)
{
    require_odd_divisor(n, m);
    long long sum = 0;
    for (const auto& e : set)
        sum += delta(e, n, m);
    const int q = n / m;
    return {reduce_mod(sum, q), q};
}

ResidueClass required_plex_residue(int n, int m)
{
    require_odd_divisor(n, m);
    const int q = n / m;
    if (q % 2 != 0)
        throw Error(ErrorCode::BadDivisor, "n/m = " + std::to_string(q) + " is odd");
    return {q / 2, q};
}

std::vector<Cell> step_violations(const LatinSquare& square, int m, int b)
{
    const int n = square.order();
    if (m < 1 || b < 1 || m % 2 == 0 || b % 2 != 0 || b * m != n)
        throw Error(ErrorCode::BadFactorization, std::to_string(n) + " != " + std::to_string(b) + " (even) * "
                                                     + std::to_string(m) + " (odd)");
    std::vector<Cell> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (square.at(i, j) / m != (i / m + j / m) % b)
                out.push_back({i, j});
    return out;
}

std::string to_string(CertificateMethod method)
{
    switch (method) {
    case CertificateMethod::StepType: return "StepType";
    case CertificateMethod::BotRows: return "BotRows";
    case CertificateMethod::MatchingBound: return "MatchingBound";
    }
    return "Unknown";
}

std::string to_string(Conclusion conclusion)
{
    return conclusion == Conclusion::Excluded ? "Excluded" : "Inconclusive";
}

bool interval_hits_residue(long long lo, long long hi, const ResidueClass& required)
{
    if (lo > hi)
        return false;
    long long q = required.modulus;
    long long shift = ((required.value - lo) % q + q) % q;
    return lo + shift <= hi;
}

namespace {

Certificate start_certificate(CertificateMethod method, const LatinSquare& square, int k, int m)
{
    if (k < 1 || k % 2 == 0)
        throw Error(ErrorCode::BadParams, "plex size " + std::to_string(k) + " is not odd");
    Certificate cert;
    cert.method = method;
    cert.square_digest = digest(square);
    cert.k = k;
    cert.m = m;
    cert.required = required_plex_residue(square.order(), m);
    return cert;
}

// |delta_m| <= n/(2m) on every entry, and a k-plex has kn entries.
void set_trivial_bounds(Certificate& cert, int n)
{
    long long cap = static_cast<long long>(cert.k) * n * (cert.required.modulus / 2);
    cert.sum_lo = -cap;
    cert.sum_hi = cap;
}

void conclude(Certificate& cert)
{
    cert.conclusion = interval_hits_residue(cert.sum_lo, cert.sum_hi, cert.required) ? Conclusion::Inconclusive
                                                                                      : Conclusion::Excluded;
}

} // namespace

Certificate steptype_certificate(const LatinSquare& square, int k, int m)
{
    auto cert = start_certificate(CertificateMethod::StepType, square, k, m);
    const int n = square.order();
    if (step_violations(square, m, n / m).empty()) {
        cert.sum_lo = cert.sum_hi = 0;
        conclude(cert);
    } else {
        set_trivial_bounds(cert, n);
        cert.conclusion = Conclusion::Inconclusive;
    }
    return cert;
}

Certificate botrows_certificate(const LatinSquare& square, int k, int m, int r)
{
    auto cert = start_certificate(CertificateMethod::BotRows, square, k, m);
    if (r < 0)
        throw Error(ErrorCode::BadParams, "r must be nonnegative");
    const int n = square.order();
    const int b = n / m;
    const long long free_rows = static_cast<long long>(m) * r;

    bool prefix_ok = true;
    for (long long i = 0; i < n - free_rows && prefix_ok; ++i)
        for (int j = 0; j < n; ++j)
            if (square.at(static_cast<int>(i), j) / m != (static_cast<int>(i) / m + j / m) % b) {
                prefix_ok = false;
                break;
            }

    const long long rr = static_cast<long long>(r) * (r - 1);
    if (!prefix_ok) {
        set_trivial_bounds(cert, n);
        cert.conclusion = Conclusion::Inconclusive;
        return cert;
    }
    long long half_width = static_cast<long long>(k) * m * rr / 2;
    cert.sum_lo = -half_width;
    cert.sum_hi = half_width;
    const bool inequality = static_cast<long long>(k) * m * m * rr < n;
    cert.conclusion = inequality ? Conclusion::Excluded : Conclusion::Inconclusive;
    return cert;
}

namespace {

// Successive shortest paths on the transportation network
// source -> rows (cap k) -> cols (cap 1 per cell) -> sink (cap k),
// minimising nonnegative cell costs. Dense Dijkstra with potentials.
class RegularSelectionFlow {
public:
    RegularSelectionFlow(int n, int k, const std::vector<long long>& cost) : n_(n), k_(k), cost_(cost) {}

    void solve(std::vector<char>& chosen)
    {
        const int nodes = 2 * n_ + 2;
        const int source = 2 * n_;
        const int sink = 2 * n_ + 1;
        std::vector<int> row_used(n_, 0), col_used(n_, 0);
        std::vector<long long> potential(nodes, 0);
        constexpr long long inf = std::numeric_limits<long long>::max() / 4;

        // Residual arcs: source->row if row_used<k; row->col if !chosen
        // (cost c); col->row if chosen (cost -c); col->sink if col_used<k.
        for (int unit = 0; unit < n_ * k_; ++unit) {
            std::vector<long long> dist(nodes, inf);
            std::vector<int> parent(nodes, -1);
            std::vector<char> done(nodes, 0);
            dist[source] = 0;
            for (int iter = 0; iter < nodes; ++iter) {
                int u = -1;
                for (int v = 0; v < nodes; ++v)
                    if (!done[v] && dist[v] < inf && (u < 0 || dist[v] < dist[u]))
                        u = v;
                if (u < 0)
                    break;
                done[u] = 1;
                auto relax = [&](int v, long long w) {
                    long long nd = dist[u] + w + potential[u] - potential[v];
                    if (nd < dist[v]) {
                        dist[v] = nd;
                        parent[v] = u;
                    }
                };
                if (u == source) {
                    for (int r = 0; r < n_; ++r)
                        if (row_used[r] < k_)
                            relax(r, 0);
                } else if (u < n_) {
                    for (int c = 0; c < n_; ++c)
                        if (!chosen[idx(u, c)])
                            relax(n_ + c, cost_[idx(u, c)]);
                } else if (u < 2 * n_) {
                    int c = u - n_;
                    for (int r = 0; r < n_; ++r)
                        if (chosen[idx(r, c)])
                            relax(r, -cost_[idx(r, c)]);
                    if (col_used[c] < k_)
                        relax(sink, 0);
                }
            }
            if (dist[sink] >= inf)
                throw Error(ErrorCode::NotFound, "no k-regular selection");
            for (int v = 0; v < nodes; ++v)
                if (dist[v] < inf)
                    potential[v] += dist[v];
            // Walk back and flip arcs.
            int v = sink;
            while (v != source) {
                int u = parent[v];
                if (u == source)
                    ++row_used[v];
                else if (v == sink)
                    ++col_used[u - n_];
                else if (u < n_)
                    chosen[idx(u, v - n_)] = 1;
                else
                    chosen[idx(v, u - n_)] = 0;
                v = u;
            }
        }
    }

private:
    std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * n_ + c; }

    int n_;
    int k_;
    const std::vector<long long>& cost_;
};

// Hungarian method with row/column potentials for the k = 1 case, O(n^3).
void min_cost_assignment(int n, const std::vector<long long>& cost, std::vector<char>& chosen)
{
    constexpr long long inf = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> u(n + 1, 0), v(n + 1, 0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<long long> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            long long d = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j])
                    continue;
                long long cur = cost[static_cast<std::size_t>(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < d) {
                    d = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += d;
                    v[j] -= d;
                } else {
                    minv[j] -= d;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    for (int j = 1; j <= n; ++j)
        chosen[static_cast<std::size_t>(match[j] - 1) * n + (j - 1)] = 1;
}

} // namespace

RegularSelection best_regular_selection(int n, int k, const std::vector<long long>& weights)
{
    if (k < 0 || k > n || weights.size() != static_cast<std::size_t>(n) * n)
        throw Error(ErrorCode::BadParams, "bad selection problem");
    RegularSelection out;
    out.chosen.assign(weights.size(), 0);
    if (k == 0)
        return out;
    long long top = *std::max_element(weights.begin(), weights.end());
    std::vector<long long> cost(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i)
        cost[i] = top - weights[i];
    if (k == 1)
        min_cost_assignment(n, cost, out.chosen);
    else
        RegularSelectionFlow(n, k, cost).solve(out.chosen);
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (out.chosen[i])
            out.value += weights[i];
    return out;
}

long long max_regular_selection(int n, int k, const std::vector<long long>& weights)
{
    return best_regular_selection(n, k, weights).value;
}

long long lagrangian_plex_bound(const LatinSquare& square, int k, const std::vector<long long>& weights, int iterations)
{
    const int n = square.order();
    // Multipliers are tracked in floating point but every bound is evaluated
    // on their rounding to multiples of 1/scale, in exact integers.
    constexpr long long scale = 1024;
    std::vector<double> lambda(n, 0.0);
    std::vector<long long> rounded(n);
    std::vector<long long> adjusted(weights.size());
    std::vector<int> count(n);
    long long best = std::numeric_limits<long long>::max();
    double level_gap = -1.0;
    int stall = 0;
    for (int it = 0; it < iterations; ++it) {
        long long lambda_total = 0;
        for (int s = 0; s < n; ++s) {
            rounded[s] = std::llround(lambda[s] * scale);
            lambda_total += rounded[s];
        }
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                auto i = static_cast<std::size_t>(r) * n + c;
                adjusted[i] = scale * weights[i] - rounded[square.at(r, c)];
            }
        auto sel = best_regular_selection(n, k, adjusted);
        const long long bound = sel.value + k * lambda_total;
        const double value = static_cast<double>(bound) / scale;
        if (level_gap < 0)
            level_gap = std::max(1.0, 0.2 * std::abs(value));
        // Target-level steps: aim a little below the best bound so far and
        // shrink the gap whenever progress stalls.
        if (bound < best) {
            if (static_cast<double>(best - bound) / scale > level_gap / 2)
                stall = 0;
            best = bound;
        }
        if (++stall > 60) {
            level_gap *= 0.8;
            stall = 0;
        }
        std::fill(count.begin(), count.end(), 0);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (sel.chosen[static_cast<std::size_t>(r) * n + c])
                    ++count[square.at(r, c)];
        long long norm2 = 0;
        for (int s = 0; s < n; ++s)
            norm2 += static_cast<long long>(count[s] - k) * (count[s] - k);
        // A selection meeting every symbol quota is itself a plex: optimal.
        if (norm2 == 0 || level_gap < 1e-3)
            break;
        const double target = static_cast<double>(best) / scale - level_gap;
        const double step = (value - target) / static_cast<double>(norm2);
        for (int s = 0; s < n; ++s)
            lambda[s] += step * (count[s] - k);
    }
    // Floor division: the true sum is an integer.
    return best >= 0 ? best / scale : -((-best + scale - 1) / scale);
}

Certificate matching_certificate(const LatinSquare& square, int k, int m, bool tighten)
{
    auto cert = start_certificate(CertificateMethod::MatchingBound, square, k, m);
    const int n = square.order();
    if (k > n)
        throw Error(ErrorCode::BadParams, "plex size exceeds order");
    std::vector<long long> w(static_cast<std::size_t>(n) * n), neg(w.size());
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            auto d = delta({r, c, square.at(r, c)}, n, m);
            w[static_cast<std::size_t>(r) * n + c] = d;
            neg[static_cast<std::size_t>(r) * n + c] = -d;
        }
    cert.sum_hi = max_regular_selection(n, k, w);
    cert.sum_lo = -max_regular_selection(n, k, neg);
    conclude(cert);
    if (cert.conclusion == Conclusion::Inconclusive && tighten) {
        cert.sum_hi = std::min(cert.sum_hi, lagrangian_plex_bound(square, k, w, kLagrangianIterations));
        cert.sum_lo = std::max(cert.sum_lo, -lagrangian_plex_bound(square, k, neg, kLagrangianIterations));
        conclude(cert);
    }
    return cert;
}

bool verify_certificate(const Certificate& cert, int order)
{
    if (cert.k < 1 || cert.k % 2 == 0)
        return false;
    try {
        if (cert.required != required_plex_residue(order, cert.m))
            return false;
    } catch (const Error&) {
        return false;
    }
    if (cert.sum_lo > cert.sum_hi)
        return false;
    const bool hits = interval_hits_residue(cert.sum_lo, cert.sum_hi, cert.required);
    if (cert.conclusion == Conclusion::Excluded)
        return !hits;
    return true;
}

bool verify_certificate(const Certificate& cert, const LatinSquare& square)
{
    return cert.square_digest == digest(square) && verify_certificate(cert, square.order());
}

} // namespace plexforge
