#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "plexforge/analyze.hpp"
#include "plexforge/construct.hpp"
#include "plexforge/error.hpp"
#include "plexforge/search.hpp"

using namespace plexforge;

TEST_CASE("delta values and tie rule")
{
    const auto b8 = build_cyclic(8);
    for (const auto& e : b8.entries())
        CHECK(delta(e, 8, 1) == 0);
    CHECK(delta({5, 1, 0}, 8, 1) == 2);
    CHECK(delta({0, 0, 9}, 18, 3) == 3);
    CHECK(delta({0, 0, 4}, 8, 1) == 4);
    CHECK(delta({0, 0, 5}, 8, 1) == -3);

    // Range and tie: values lie in [-n/2m, n/2m] and -n/2m never appears.
    for (int n : {6, 12, 18})
        for (int m : {1, 3}) {
            const int half = n / (2 * m);
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    const int d = delta({r, 0, s}, n, m);
                    CHECK(d <= half);
                    CHECK(d > -half);
                }
        }
    CHECK_THROWS_AS(delta({0, 0, 0}, 12, 2), Error);
    CHECK_THROWS_AS(require_odd_divisor(12, 5), Error);
}

TEST_CASE("delta sum residues")
{
    CHECK(required_plex_residue(12, 1) == ResidueClass{6, 12});
    CHECK(required_plex_residue(18, 3) == ResidueClass{3, 6});

    const auto J = build_J(KK2Params{3, 3});
    CHECK(plex_delta_sum(J, 18, 1) == ResidueClass{0, 18});

    const KK2Params p{3, 2};
    CHECK(plex_delta_sum(build_plex(p), 12, 1) == ResidueClass{6, 12});
}

TEST_CASE("step violations")
{
    const auto st = build_step_type(StepParams::uniform(2, build_cyclic(3).rows()));
    CHECK(step_violations(st, 3, 2).empty());

    const auto carry = step_violations(build_cyclic(12), 3, 4);
    CHECK(std::find(carry.begin(), carry.end(), Cell{1, 2}) != carry.end());

    const auto l2 = build_mod4_square(8, 2);
    const auto v = step_violations(l2, 1, 8);
    CHECK(v.size() == 8);
    const auto trades = build_trades(TriplexVariant::mod4(8));
    for (const auto& e : trades[1].removed())
        CHECK(std::find(v.begin(), v.end(), Cell{e.row, e.col}) != v.end());
}

TEST_CASE("interval_hits_residue")
{
    CHECK(interval_hits_residue(-2, 2, {0, 12}));
    CHECK_FALSE(interval_hits_residue(-2, 2, {6, 12}));
    CHECK(interval_hits_residue(-6, -6, {6, 12}));
    CHECK(interval_hits_residue(17, 19, {6, 12}));
    CHECK_FALSE(interval_hits_residue(7, 17, {6, 12}));
    CHECK_FALSE(interval_hits_residue(3, 2, {0, 1}));
}

TEST_CASE("regular selection matches exhaustive optimum")
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> w(-5, 5);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + trial % 3;
        const int k = 1 + trial % n;
        std::vector<long long> weights(n * n);
        for (auto& x : weights)
            x = w(rng);
        std::vector<long long> negated(weights);
        for (auto& x : negated)
            x = -x;
        const auto sel = best_regular_selection(n, k, weights);
        CHECK(sel.value == oracle::best_regular(n, k, weights, true));
        CHECK(-max_regular_selection(n, k, negated) == oracle::best_regular(n, k, weights, false));
        long long sum = 0;
        std::vector<int> rows(n), cols(n);
        for (int i = 0; i < n * n; ++i)
            if (sel.chosen[i]) {
                sum += weights[i];
                ++rows[i / n];
                ++cols[i % n];
            }
        CHECK(sum == sel.value);
        for (int i = 0; i < n; ++i) {
            CHECK(rows[i] == k);
            CHECK(cols[i] == k);
        }
    }
}

TEST_CASE("lagrangian bound dominates every plex")
{
    // Any multipliers give a valid bound, so it must sit above the true
    // maximum over all plexes, and never above the plain relaxation.
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> w(-3, 3);
    for (int seed = 1; seed <= 6; ++seed) {
        const int n = 5 + seed % 2;
        const auto sq = random_completion(LatinRectangle::from_rows(n, {}), seed);
        for (int k = 1; k <= 2; ++k) {
            std::vector<long long> weights(n * n);
            for (auto& x : weights)
                x = w(rng);
            long long best = std::numeric_limits<long long>::min();
            for_each_plex(sq, k, [&](const EntrySet& p) {
                long long v = 0;
                for (const auto& e : p)
                    v += weights[e.row * n + e.col];
                best = std::max(best, v);
                return true;
            });
            const long long bound = lagrangian_plex_bound(sq, k, weights, kLagrangianIterations);
            CHECK(bound >= best);
            CHECK(bound <= max_regular_selection(n, k, weights));
        }
    }
}

TEST_CASE("bottom-rows certificates")
{
    const auto rect = LatinRectangle::prefix_of(build_cyclic(8), 5);
    const auto completions = enumerate_completions(rect);
    REQUIRE(completions.size() == 264);
    const auto& sq = completions[100];
    const auto c1 = botrows_certificate(sq, 1, 1, 3);
    CHECK(c1.conclusion == Conclusion::Excluded);
    CHECK(c1.sum_lo == -3);
    CHECK(c1.sum_hi == 3);
    CHECK(verify_certificate(c1, sq));
    CHECK(botrows_certificate(sq, 3, 1, 3).conclusion == Conclusion::Inconclusive);

    const auto st = build_step_type(StepParams::uniform(2, build_cyclic(3).rows()));
    CHECK(botrows_certificate(st, 1, 3, 0).conclusion == Conclusion::Excluded);
    CHECK(steptype_certificate(st, 1, 3).conclusion == Conclusion::Excluded);
    CHECK(steptype_certificate(build_mod4_square(8, 2), 3, 1).conclusion == Conclusion::Inconclusive);
    CHECK_THROWS_AS(botrows_certificate(build_cyclic(9), 1, 3, 1), Error);
}

TEST_CASE("matching certificates")
{
    const auto b12 = build_cyclic(12);
    const auto c = matching_certificate(b12, 1, 1);
    CHECK(c.sum_lo == 0);
    CHECK(c.sum_hi == 0);
    CHECK(c.required == ResidueClass{6, 12});
    CHECK(c.conclusion == Conclusion::Excluded);

    const auto lp = build_modified_square(KK2Params{3, 2});
    const auto c2 = matching_certificate(lp, 1, 1);
    CHECK(c2.sum_lo >= -2);
    CHECK(c2.sum_hi <= 2);
    CHECK(c2.conclusion == Conclusion::Excluded);

    const auto l10 = build_special_square(10);
    const auto c3 = matching_certificate(l10, 1, 1);
    CHECK(c3.sum_hi <= 4);
    CHECK(c3.sum_lo >= -4);
    CHECK(c3.required == ResidueClass{5, 10});
    CHECK(c3.conclusion == Conclusion::Excluded);

    // The plex the construction supplies lies inside the recorded bounds.
    const auto c4 = matching_certificate(lp, 3, 1);
    CHECK(c4.conclusion == Conclusion::Inconclusive);
    long long s = 0;
    for (const auto& e : build_plex(KK2Params{3, 2}))
        s += delta(e, 12, 1);
    CHECK(s >= c4.sum_lo);
    CHECK(s <= c4.sum_hi);
}

TEST_CASE("certificates agree with exhaustive search on small squares")
{
    std::vector<LatinSquare> squares{build_cyclic(4), build_cyclic(6), build_cyclic(8), build_mod4_square(8, 1),
                                     build_mod4_square(8, 2), build_mod4_square(8, 3), find_order6_example()};
    for (std::uint64_t seed = 1; seed <= 6; ++seed)
        squares.push_back(random_completion(LatinRectangle::from_rows(6 + 2 * (seed % 2), {}), seed));
    for (const auto& sq : squares)
        for (int k : {1, 3}) {
            // Exhaustive triplex enumeration is only quick up to order 6.
            if (k == 3 && sq.order() > 6)
                continue;
            const auto cert = matching_certificate(sq, k, 1);
            const auto found = count_plexes(sq, k);
            REQUIRE(found.complete);
            if (cert.conclusion == Conclusion::Excluded)
                CHECK(*found.count == 0);
            else
                for_each_plex(sq, k, [&](const EntrySet& p) {
                    long long sum = 0;
                    for (const auto& e : p)
                        sum += delta(e, sq.order(), 1);
                    CHECK(sum >= cert.sum_lo);
                    CHECK(sum <= cert.sum_hi);
                    return true;
                });
        }
}

TEST_CASE("verify_certificate rejects tampering")
{
    const auto sq = build_cyclic(12);
    auto cert = matching_certificate(sq, 1, 1);
    CHECK(verify_certificate(cert, 12));
    auto wrong_digest = cert;
    wrong_digest.square_digest[0] = wrong_digest.square_digest[0] == 'a' ? 'b' : 'a';
    CHECK_FALSE(verify_certificate(wrong_digest, sq));
    auto wide = cert;
    wide.sum_hi = 6;
    CHECK_FALSE(verify_certificate(wide, sq));
    auto residue = cert;
    residue.required = {0, 12};
    CHECK_FALSE(verify_certificate(residue, sq));
    CHECK_FALSE(verify_certificate(cert, build_cyclic(10)));
}
