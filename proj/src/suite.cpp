#include "plexforge/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "plexforge/analyze.hpp"
#include "plexforge/bounds.hpp"
#include "plexforge/construct.hpp"
#include "plexforge/error.hpp"
#include "plexforge/search.hpp"
#include "plexforge/species.hpp"

namespace plexforge {

namespace {

using Matrix = std::vector<std::vector<int>>;

// Delta_1 over rows 5..7 of the eight order-8 completions listed as
// species representatives (0 = blank).
const std::vector<Matrix> kReferenceSignatures = {
    {{0, 2, 0, 2, 0, 2, 0, 2}, {0, 0, 0, 0, 0, 0, 0, 0}, {0, -2, 0, -2, 0, -2, 0, -2}},
    {{0, 2, 0, 2, 0, 2, 0, 2}, {0, 0, 0, 0, 0, 0, 1, -1}, {0, -2, 0, -2, 0, -2, -1, -1}},
    {{0, 2, 0, 2, 0, 2, 0, 2}, {0, 0, 1, -1, 0, 0, 1, -1}, {0, -2, -1, -1, 0, -2, -1, -1}},
    {{0, 2, 0, 1, 2, 0, 1, 2}, {0, 0, 0, 1, -1, 0, 1, -1}, {0, -2, 0, -2, -1, 0, -2, -1}},
    {{0, 2, 0, 1, 2, 0, 1, 2}, {0, 0, 0, 1, -1, 1, -1, 0}, {0, -2, 0, -2, -1, -1, 0, -2}},
    {{0, 2, 0, 1, 2, 0, 1, 2}, {0, 0, 1, -1, 0, 0, 1, -1}, {0, -2, -1, 0, -2, 0, -2, -1}},
    {{0, 2, 0, 1, 1, 1, 1, 2}, {0, 0, 0, 1, -1, 1, -1, 0}, {0, -2, 0, -2, 0, -2, 0, -2}},
    {{0, 2, 0, 1, 1, 2, 0, 2}, {0, 0, 0, 1, -1, 0, 1, -1}, {0, -2, 0, -2, 0, -2, -1, -1}},
};

// Runtime budgets per criterion, in milliseconds.
constexpr double kBudgetMs[kCriterionCount + 1] = {0,      10000,  5000,   60000,  120000, 120000,
                                                   180000, 120000, 120000, 120000, 120000, 60000};

// Base seeds for the randomized criteria.
constexpr std::uint64_t kBotRowsSeed = 0x5eed0008;
constexpr std::uint64_t kDeltaLawSeed = 0x5eed0009;
constexpr std::uint64_t kStepSampleSeed = 0x5eed000a;

constexpr int kBotRowsSamples = 100;
constexpr int kDeltaLawSamples = 200;   // per order
constexpr int kTriplexesPerSquare = 64; // 3-plexes checked per random square
constexpr int kStepSample = 50;
constexpr double kLogTolerance = 1e-9;

// Verdict builder: collects failed checks, reports the first few.
class Checks {
public:
    void expect(bool ok, const std::string& what)
    {
        ++total_;
        if (!ok) {
            if (failed_.size() < 4)
                failed_.push_back(what);
            ++failures_;
        }
    }
    void note(const std::string& s) { notes_.push_back(s); }

    bool passed() const { return failures_ == 0; }
    std::string detail() const
    {
        std::ostringstream os;
        if (failures_ == 0) {
            os << total_ << " checks ok";
        } else {
            os << failures_ << " of " << total_ << " checks failed:";
            for (const auto& f : failed_)
                os << " [" << f << "]";
        }
        for (const auto& n : notes_)
            os << "; " << n;
        return os.str();
    }

private:
    int total_ = 0;
    int failures_ = 0;
    std::vector<std::string> failed_;
    std::vector<std::string> notes_;
};

std::string str(long long v) { return std::to_string(v); }

std::uint64_t brute_force_transversals(const LatinSquare& sq)
{
    const int n = sq.order();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t count = 0;
    do {
        std::vector<char> seen(n, 0);
        bool ok = true;
        for (int r = 0; r < n && ok; ++r) {
            int s = sq.at(r, perm[r]);
            ok = !seen[s];
            seen[s] = 1;
        }
        count += ok;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

bool excludes(const LatinSquare& sq, int k)
{
    return matching_certificate(sq, k, 1).conclusion == Conclusion::Excluded;
}

bool no_transversal_by_search(const LatinSquare& sq)
{
    return find_plex(sq, 1).status == SearchStatus::ExhaustedNone;
}

LatinSquare random_square(int n, std::uint64_t seed)
{
    auto sq = random_completion(LatinRectangle::from_rows(n, {}), seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<int> a(n), b(n), c(n);
    std::iota(a.begin(), a.end(), 0);
    b = a;
    c = a;
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    std::shuffle(c.begin(), c.end(), rng);
    return relabel(sq, a, b, c);
}

void criterion1(Checks& chk)
{
    for (int n : {4, 6, 8, 10, 12, 14}) {
        auto out = count_transversals(build_cyclic(n));
        chk.expect(out.count && *out.count == 0, "B_" + str(n) + " count " + str(out.count.value_or(~0ULL)));
    }
}

void criterion2(Checks& chk)
{
    const std::pair<int, std::uint64_t> expected[] = {{3, 3}, {5, 15}, {7, 133}, {9, 2025}};
    for (auto [n, want] : expected) {
        const auto sq = build_cyclic(n);
        const auto bitmask = count_transversals(sq).count.value_or(0);
        const auto dlx = count_transversals_dlx(sq);
        chk.expect(bitmask == want, "B_" + str(n) + " bitmask " + str(bitmask));
        chk.expect(dlx == want, "B_" + str(n) + " dlx " + str(dlx));
        if (n <= 5) {
            const auto brute = brute_force_transversals(sq);
            chk.expect(brute == want, "B_" + str(n) + " brute force " + str(brute));
        }
    }
}

void criterion3(Checks& chk)
{
    const auto b8 = build_cyclic(8);
    const auto squares = enumerate_completions(LatinRectangle::prefix_of(b8, 5));
    chk.expect(squares.size() == 264, "completions " + str(static_cast<long long>(squares.size())));
    int with_transversal = 0;
    for (const auto& sq : squares)
        with_transversal += count_transversals(sq).count.value_or(1) != 0;
    chk.expect(with_transversal == 0, str(with_transversal) + " completions have transversals");

    const auto classes = classify(squares);
    chk.expect(classes.size() == 9, "classes " + str(static_cast<long long>(classes.size())));
    const auto b8_key = canonical_key(b8);
    int b8_classes = 0;
    std::vector<std::set<std::size_t>> matched;
    for (const auto& c : classes) {
        if (c.key == b8_key) {
            ++b8_classes;
            continue;
        }
        std::set<std::size_t> hits;
        for (auto i : c.members) {
            const auto sig = delta_signature(squares[i], {5, 6, 7});
            for (std::size_t d = 0; d < kReferenceSignatures.size(); ++d)
                if (sig.matrix == kReferenceSignatures[d])
                    hits.insert(d);
        }
        matched.push_back(hits);
    }
    chk.expect(b8_classes == 1, "classes containing B_8: " + str(b8_classes));
    std::set<std::size_t> used;
    bool one_to_one = matched.size() == kReferenceSignatures.size();
    for (const auto& hits : matched) {
        one_to_one = one_to_one && hits.size() == 1 && used.insert(*hits.begin()).second;
    }
    chk.expect(one_to_one, "signature matching is not one-to-one");
}

void criterion4(Checks& chk)
{
    for (auto [k, m] : {std::pair{3, 2}, std::pair{3, 3}, std::pair{5, 2}}) {
        const KK2Params p{k, m};
        const auto sq = build_modified_square(p);
        const auto plex = build_plex(p);
        const std::string tag = "(k,m)=(" + str(k) + "," + str(m) + ")";
        chk.expect(is_plex(sq, plex, k) && plex.size() == static_cast<std::size_t>(k * sq.order()),
                   tag + " plex");
        for (int kk = 1; kk < k; kk += 2)
            chk.expect(excludes(sq, kk), tag + " k'=" + str(kk) + " not excluded");
        if (sq.order() == 12)
            chk.expect(no_transversal_by_search(sq), tag + " search found a transversal");
    }
}

void criterion5(Checks& chk)
{
    for (int n : {8, 12, 16, 20, 24}) {
        const auto variant = TriplexVariant::mod4(n);
        const int index = mod4_square_index(n);
        const auto sq = build_mod4_square(n, index);
        const auto plex = build_plex(variant);
        chk.expect(sq == build_modified_square(variant), "n=" + str(n) + " square differs from L_" + str(index));
        chk.expect(is_plex(sq, plex, 3), "n=" + str(n) + " triplex");
        chk.expect(excludes(sq, 1), "n=" + str(n) + " transversals not excluded");
        if (n <= 12)
            chk.expect(no_transversal_by_search(sq), "n=" + str(n) + " search found a transversal");
    }
}

void criterion6(Checks& chk)
{
    for (int n : kSmallOrders) {
        const auto sq = build_special_square(n);
        const auto plex = build_special_triplex(n);
        chk.expect(sq.order() == n, "n=" + str(n) + " order");
        chk.expect(is_plex(sq, plex, 3), "n=" + str(n) + " triplex");
        chk.expect(excludes(sq, 1), "n=" + str(n) + " transversals not excluded");
        if (n == 10 || n == 14)
            chk.expect(no_transversal_by_search(sq), "n=" + str(n) + " search found a transversal");
    }
}

void criterion7(Checks& chk)
{
    const std::pair<TriplexVariant, int> cases[] = {
        {TriplexVariant::mod10of12(5), 4 * 5 + 7},
        {TriplexVariant::mod2of12(6), 4 * 6 + 11},
    };
    for (const auto& [variant, limit] : cases) {
        const std::string tag = "n=" + str(variant.n);
        const auto trades = build_trades(variant);
        for (std::size_t i = 0; i < trades.size(); ++i)
            for (std::size_t j = i + 1; j < trades.size(); ++j) {
                chk.expect(trades[i].removed().disjoint_from(trades[j].removed()), tag + " trades overlap");
                chk.expect(trades[i].mate().disjoint_from(trades[j].mate()), tag + " mates overlap");
            }
        auto sq = build_cyclic(variant.n);
        for (const auto& t : trades)
            sq = apply_trade(sq, t);
        chk.expect(sq == build_modified_square(variant), tag + " modified square");
        chk.expect(is_plex(sq, build_plex(variant), 3), tag + " triplex");
        const auto cert = matching_certificate(sq, 1, 1);
        chk.expect(cert.conclusion == Conclusion::Excluded, tag + " not excluded");
        chk.expect(std::max(std::abs(cert.sum_lo), std::abs(cert.sum_hi)) <= limit,
                   tag + " bounds [" + str(cert.sum_lo) + "," + str(cert.sum_hi) + "] exceed " + str(limit));
        chk.note(tag + " bounds [" + str(cert.sum_lo) + "," + str(cert.sum_hi) + "] vs " + str(limit));
    }
}

void criterion8(Checks& chk)
{
    const auto b8 = build_cyclic(8);
    int excluded = 0;
    const auto squares = enumerate_completions(LatinRectangle::prefix_of(b8, 5));
    for (const auto& sq : squares)
        excluded += botrows_certificate(sq, 1, 1, 3).conclusion == Conclusion::Excluded;
    chk.expect(excluded == 264 && squares.size() == 264, "order 8: " + str(excluded) + " excluded");

    const auto prefix = LatinRectangle::prefix_of(build_cyclic(12), 9);
    std::set<std::string> distinct;
    for (int i = 0; i < kBotRowsSamples; ++i) {
        const auto sq = random_completion(prefix, kBotRowsSeed + static_cast<std::uint64_t>(i));
        distinct.insert(digest(sq));
        const bool cert = botrows_certificate(sq, 1, 1, 3).conclusion == Conclusion::Excluded;
        const bool search = no_transversal_by_search(sq);
        chk.expect(cert, "sample " + str(i) + " not excluded");
        chk.expect(search == cert, "sample " + str(i) + " search disagrees");
    }
    chk.note(str(static_cast<long long>(distinct.size())) + " distinct order-12 samples");
}

void criterion9(Checks& chk)
{
    long long plexes = 0;
    long long violations = 0;
    for (int n : {6, 8}) {
        std::vector<int> divisors;
        for (int m = 1; m <= n; m += 2)
            if (n % m == 0)
                divisors.push_back(m);
        for (int i = 0; i < kDeltaLawSamples; ++i) {
            const auto sq = random_square(n, kDeltaLawSeed + static_cast<std::uint64_t>(n * 1000 + i));
            auto check = [&](const EntrySet& plex) {
                ++plexes;
                for (int m : divisors)
                    violations += plex_delta_sum(plex, n, m) != required_plex_residue(n, m);
            };
            for_each_plex(sq, 1, [&](const EntrySet& plex) {
                check(plex);
                return true;
            });
            int seen = 0;
            for_each_plex(sq, 3, [&](const EntrySet& plex) {
                check(plex);
                return ++seen < kTriplexesPerSquare;
            });
        }
    }
    chk.expect(violations == 0, str(violations) + " residue violations");
    chk.expect(plexes > 0, "no plexes found");
    chk.note(str(plexes) + " plexes checked");
}

void criterion10(Checks& chk)
{
    const auto bound = extension_bound(8, 5);
    const BigInt f8 = 40320;
    const Rational expected(f8 * f8 * f8 * boost::multiprecision::pow(BigInt(6), 8),
                            boost::multiprecision::pow(BigInt(8), 24));
    chk.expect(bound.exact_value && *bound.exact_value == expected, "extension_bound(8,5) exact value");
    const double log_expected = 3 * std::log10(40320.0) + 8 * std::log10(6.0) - 24 * std::log10(8.0);
    chk.expect(std::abs(bound.log10_value - log_expected) < kLogTolerance, "extension_bound(8,5) log10");

    std::set<std::string> digests;
    std::vector<LatinSquare> all;
    long long violating = 0;
    for_each_step_type(2, 3, [&](const LatinSquare& sq) {
        digests.insert(digest(sq));
        violating += !step_violations(sq, 3, 2).empty();
        all.push_back(sq);
        return true;
    });
    chk.expect(all.size() == 20736, "step-type squares " + str(static_cast<long long>(all.size())));
    chk.expect(digests.size() == 20736, "distinct step-type squares " + str(static_cast<long long>(digests.size())));
    chk.expect(violating == 0, str(violating) + " squares violate the step condition");
    std::mt19937_64 rng(kStepSampleSeed);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int i = 0; i < kStepSample; ++i) {
        const auto& sq = all[pick(rng)];
        chk.expect(no_transversal_by_search(sq), "sampled step-type square has a transversal");
    }
}

void criterion11(Checks& chk)
{
    const auto sq = find_order6_example();
    chk.expect(sq.order() == 6, "order");
    chk.expect(count_transversals(sq).count.value_or(1) == 0, "transversal count");
    const auto triplex = find_plex(sq, 3);
    chk.expect(triplex.status == SearchStatus::Found && triplex.witness && is_plex(sq, *triplex.witness, 3),
               "triplex");
}

struct Criterion {
    const char* name;
    void (*run)(Checks&);
};

const Criterion kCriteria[kCriterionCount] = {
    {"cyclic squares of even order have no transversal", criterion1},
    {"odd cyclic transversal counts", criterion2},
    {"completions of five rows of B_8", criterion3},
    {"k-plex without smaller odd plexes", criterion4},
    {"triplex without transversal, n = 0 mod 4", criterion5},
    {"triplex without transversal, tabulated orders", criterion6},
    {"triplex without transversal, n = 58 and 74", criterion7},
    {"bottom-rows certificates", criterion8},
    {"delta residue law on random squares", criterion9},
    {"extension bound and step-type enumeration", criterion10},
    {"order-6 triplex without transversal", criterion11},
};

} // namespace

CriterionResult run_criterion(int id)
{
    if (id < 1 || id > kCriterionCount)
        throw Error(ErrorCode::BadParams, "no criterion " + std::to_string(id));
    const auto& c = kCriteria[id - 1];
    CriterionResult out;
    out.id = id;
    out.name = c.name;
    out.budget_ms = kBudgetMs[id];
    const auto start = std::chrono::steady_clock::now();
    Checks chk;
    try {
        c.run(chk);
        out.passed = chk.passed();
        out.detail = chk.detail();
    } catch (const std::exception& e) {
        out.passed = false;
        out.detail = std::string("error: ") + e.what();
    }
    out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (out.elapsed_ms > out.budget_ms) {
        out.passed = false;
        out.detail += "; over time budget";
    }
    return out;
}

std::vector<CriterionResult> run_acceptance_suite(const std::function<void(const CriterionResult&)>& progress)
{
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) {
        out.push_back(run_criterion(id));
        if (progress)
            progress(out.back());
    }
    return out;
}

std::string format_result(const CriterionResult& r)
{
    std::ostringstream os;
    os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " ("
       << static_cast<long long>(std::llround(r.elapsed_ms)) << " / " << static_cast<long long>(r.budget_ms)
       << " ms): " << r.detail;
    return os.str();
}

} // namespace plexforge
