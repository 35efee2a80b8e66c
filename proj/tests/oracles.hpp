#pragma once

// Brute-force reference computations, kept deliberately naive so they share
// nothing with the library's search code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "plexforge/core.hpp"

namespace oracle {

using plexforge::LatinSquare;

// Transversals by trying every column permutation.
inline std::uint64_t transversals(const LatinSquare& sq)
{
    const int n = sq.order();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t count = 0;
    do {
        std::vector<char> seen(n, 0);
        bool ok = true;
        for (int r = 0; r < n && ok; ++r) {
            const int s = sq.at(r, perm[r]);
            ok = !seen[s];
            seen[s] = 1;
        }
        count += ok;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

// k-plexes by scanning every subset of the n*n cells (n <= 5).
inline std::uint64_t plexes(const LatinSquare& sq, int k)
{
    const int n = sq.order();
    const int cells = n * n;
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
        if (__builtin_popcountll(mask) != k * n)
            continue;
        std::vector<int> rows(n), cols(n), syms(n);
        for (int i = 0; i < cells; ++i)
            if (mask >> i & 1) {
                ++rows[i / n];
                ++cols[i % n];
                ++syms[sq.at(i / n, i % n)];
            }
        auto all_k = [k](const std::vector<int>& v) {
            return std::all_of(v.begin(), v.end(), [k](int x) { return x == k; });
        };
        count += all_k(rows) && all_k(cols) && all_k(syms);
    }
    return count;
}

// Every latin square of order n, by filling cells in row-major order.
inline void all_squares(int n, const std::function<void(const LatinSquare&)>& visit)
{
    std::vector<std::vector<int>> g(n, std::vector<int>(n, -1));
    std::function<void(int)> fill = [&](int cell) {
        if (cell == n * n) {
            visit(LatinSquare::from_grid(n, g));
            return;
        }
        const int r = cell / n, c = cell % n;
        for (int s = 0; s < n; ++s) {
            bool ok = true;
            for (int j = 0; j < c && ok; ++j)
                ok = g[r][j] != s;
            for (int i = 0; i < r && ok; ++i)
                ok = g[i][c] != s;
            if (!ok)
                continue;
            g[r][c] = s;
            fill(cell + 1);
            g[r][c] = -1;
        }
    };
    fill(0);
}

// Optimum of a k-regular 0/1 selection over every subset (n <= 4).
inline long long best_regular(int n, int k, const std::vector<long long>& w, bool maximize)
{
    const int cells = n * n;
    bool any = false;
    long long best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
        if (__builtin_popcountll(mask) != k * n)
            continue;
        std::vector<int> rows(n), cols(n);
        long long value = 0;
        for (int i = 0; i < cells; ++i)
            if (mask >> i & 1) {
                ++rows[i / n];
                ++cols[i % n];
                value += w[i];
            }
        bool ok = true;
        for (int i = 0; i < n; ++i)
            ok = ok && rows[i] == k && cols[i] == k;
        if (!ok)
            continue;
        if (!any || (maximize ? value > best : value < best))
            best = value;
        any = true;
    }
    return best;
}

inline std::vector<int> random_perm(int n, std::mt19937_64& rng)
{
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

} // namespace oracle
