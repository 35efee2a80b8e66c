#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "plexforge/analyze.hpp"
#include "plexforge/construct.hpp"
#include "plexforge/error.hpp"
#include "plexforge/search.hpp"
#include "plexforge/species.hpp"

using namespace plexforge;

namespace {

// Least row-major string over the species by trying every row and column
// permutation of every conjugate. The least square starts with the
// identity row, which fixes the symbol relabeling.
std::vector<std::uint8_t> brute_least(const LatinSquare& square)
{
    const int n = square.order();
    std::vector<std::uint8_t> best;
    for (const auto& conj : conjugates(square)) {
        std::vector<int> rp(n), cp(n);
        std::iota(rp.begin(), rp.end(), 0);
        do {
            std::iota(cp.begin(), cp.end(), 0);
            do {
                std::vector<int> sym(n);
                for (int j = 0; j < n; ++j)
                    sym[conj.at(rp[0], cp[j])] = j;
                std::vector<std::uint8_t> cur;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        cur.push_back(static_cast<std::uint8_t>(sym[conj.at(rp[i], cp[j])]));
                if (best.empty() || cur < best)
                    best = cur;
            } while (std::next_permutation(cp.begin(), cp.end()));
        } while (std::next_permutation(rp.begin(), rp.end()));
    }
    best.insert(best.begin(), static_cast<std::uint8_t>(n));
    return best;
}

LatinSquare random_square(int n, std::uint64_t seed)
{
    return random_completion(LatinRectangle::from_rows(n, {}), seed);
}

LatinSquare random_species_element(const LatinSquare& sq, std::mt19937_64& rng)
{
    const int n = sq.order();
    const auto conj = conjugate(sq, kConjugatePerms[rng() % 6]);
    return relabel(conj, oracle::random_perm(n, rng), oracle::random_perm(n, rng), oracle::random_perm(n, rng));
}

} // namespace

TEST_CASE("conjugates")
{
    const auto sq = random_square(6, 4);
    const auto all = conjugates(sq);
    REQUIRE(all.size() == 6);
    CHECK(all[0] == sq);
    CHECK(conjugate(build_cyclic(7), {1, 0, 2}) == build_cyclic(7));
    // (col, sym) swap of the addition table holds s - r.
    const auto sub = conjugate(build_cyclic(7), {0, 2, 1});
    for (int r = 0; r < 7; ++r)
        for (int c = 0; c < 7; ++c)
            CHECK(sub.at(r, c) == (c - r + 7) % 7);
    // Each conjugate is an involution or has order 3.
    for (const auto& p : kConjugatePerms) {
        auto twice = conjugate(conjugate(conjugate(sq, p), p), p);
        auto back = conjugate(conjugate(sq, p), p);
        CHECK((back == sq || twice == sq));
    }
}

TEST_CASE("relabel validates its permutations")
{
    const auto sq = build_cyclic(3);
    CHECK_THROWS_AS(relabel(sq, {0, 0, 1}, {0, 1, 2}, {0, 1, 2}), Error);
    CHECK_THROWS_AS(relabel(sq, {0, 1}, {0, 1, 2}, {0, 1, 2}), Error);
    CHECK(relabel(sq, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}) == sq);
}

TEST_CASE("canonical keys equal the brute-force least square")
{
    for (std::uint64_t seed = 1; seed <= 24; ++seed) {
        const int n = 3 + static_cast<int>(seed % 3);
        const auto sq = random_square(n, seed);
        CHECK(canonical_key(sq).bytes == brute_least(sq));
    }
    CHECK(canonical_key(find_order6_example()).bytes == brute_least(find_order6_example()));
}

TEST_CASE("canonical keys are species invariants")
{
    std::mt19937_64 rng(2024);
    for (int n = 4; n <= 8; ++n)
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            const auto sq = random_square(n, seed * 31 + n);
            const auto key = canonical_key(sq);
            CHECK(key.square().order() == n);
            CHECK(canonical_key(key.square()) == key);
            for (int t = 0; t < 100; ++t)
                REQUIRE(canonical_key(random_species_element(sq, rng)) == key);
        }
}

TEST_CASE("small orders")
{
    std::set<SpeciesKey> order3;
    oracle::all_squares(3, [&](const LatinSquare& sq) { order3.insert(canonical_key(sq)); });
    CHECK(order3.size() == 1);

    std::vector<LatinSquare> order4;
    oracle::all_squares(4, [&](const LatinSquare& sq) { order4.push_back(sq); });
    CHECK(classify(order4).size() == 2);
    CHECK(canonical_key(build_cyclic(1)).hex() == "0100");
    CHECK_THROWS_AS(canonical_key(build_cyclic(11)), Error);
}

TEST_CASE("classifying the completions of five rows of B_8")
{
    const auto squares = enumerate_completions(LatinRectangle::prefix_of(build_cyclic(8), 5));
    REQUIRE(squares.size() == 264);
    const auto classes = classify(squares);
    CHECK(classes.size() == 9);

    const auto b8_key = canonical_key(build_cyclic(8));
    int with_b8 = 0;
    std::size_t total = 0;
    for (const auto& c : classes) {
        with_b8 += c.key == b8_key;
        total += c.members.size();
        CHECK(std::is_sorted(c.members.begin(), c.members.end()));
        CHECK(c.representative == c.key.square());
        // Members of one class share their transversal count.
        const auto expect = *count_transversals(squares[c.members.front()]).count;
        for (auto i : c.members)
            CHECK(*count_transversals(squares[i]).count == expect);
    }
    CHECK(with_b8 == 1);
    CHECK(total == 264);

    // Shuffling the input keeps the partition.
    auto shuffled = squares;
    std::mt19937_64 rng(5);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto again = classify(shuffled);
    REQUIRE(again.size() == classes.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
        CHECK(again[i].key == classes[i].key);
        CHECK(again[i].members.size() == classes[i].members.size());
    }
}

TEST_CASE("classify")
{
    std::mt19937_64 rng(8);
    const auto sq = random_square(7, 1);
    std::vector<LatinSquare> list{sq};
    for (int i = 0; i < 3; ++i)
        list.push_back(relabel(sq, oracle::random_perm(7, rng), oracle::random_perm(7, rng), oracle::random_perm(7, rng)));
    CHECK(classify(list).size() == 1);
    CHECK(classify({}).empty());
    CHECK_THROWS_AS(classify({build_cyclic(3), build_cyclic(4)}), Error);
}

TEST_CASE("delta signatures")
{
    const auto blank = delta_signature(build_cyclic(8), {5, 6, 7});
    CHECK(blank.matrix == std::vector<std::vector<int>>(3, std::vector<int>(8, 0)));
    CHECK(blank.to_text() == ". . . . . . . .\n. . . . . . . .\n. . . . . . . .\n");

    // B_8 with the intercalate-style swap of symbols between rows 5 and 7
    // on the odd columns.
    auto rows = build_cyclic(8).rows();
    for (int c = 1; c < 8; c += 2)
        std::swap(rows[5][c], rows[7][c]);
    const auto sq = LatinSquare::from_grid(8, rows);
    const auto sig = delta_signature(sq, {5, 6, 7});
    CHECK(sig.matrix[0] == std::vector<int>{0, 2, 0, 2, 0, 2, 0, 2});
    CHECK(sig.matrix[1] == std::vector<int>(8, 0));
    CHECK(sig.matrix[2] == std::vector<int>{0, -2, 0, -2, 0, -2, 0, -2});
    CHECK(restrict_delta_nonzero(sq, 1).size() == 8);
    CHECK_THROWS_AS(delta_signature(sq, {8}), Error);
}
