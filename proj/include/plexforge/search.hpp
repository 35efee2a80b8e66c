#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plexforge/core.hpp"

namespace plexforge {

/// Orders accepted by the exact searches (bitmask width).
inline constexpr int kMaxSearchOrder = 64;

struct SearchBudget {
    std::optional<std::uint64_t> node_limit;
    std::optional<std::uint64_t> solution_limit;
    /// 0 keeps the natural value order; anything else shuffles it.
    std::uint64_t deterministic_seed = 0;
};

struct SearchOptions {
    /// Worker threads; 0 means default_jobs().
    int jobs = 1;
    /// Prune branches whose delta sum can no longer reach the residue every
    /// odd plex of an even-order square must have. Off by default so that
    /// exhaustive answers stay independent of the certificate machinery.
    bool delta_pruning = false;
};

enum class SearchStatus { Found, ExhaustedNone, BudgetExceeded };
std::string to_string(SearchStatus status);

struct SearchOutcome {
    SearchStatus status = SearchStatus::ExhaustedNone;
    std::optional<EntrySet> witness;
    std::optional<std::uint64_t> count;
    std::uint64_t nodes = 0;
    /// False when a node or solution limit cut the search short.
    bool complete = true;
};

/// PLEXFORGE_JOBS when set to a positive integer, else 1.
int default_jobs();

/// Complete search for one k-plex. ExhaustedNone is only reported when
/// every branch was explored.
SearchOutcome find_plex(const LatinSquare& square, int k, const SearchBudget& budget = {},
                        const SearchOptions& options = {});

/// Exact number of k-plexes; status Found iff the count is positive, with
/// the first witness in search order.
SearchOutcome count_plexes(const LatinSquare& square, int k, const SearchBudget& budget = {},
                           const SearchOptions& options = {});

SearchOutcome count_transversals(const LatinSquare& square, const SearchBudget& budget = {},
                                 const SearchOptions& options = {});

/// Transversal count by dancing links exact cover, written independently of
/// the bitmask search as a cross-check.
std::uint64_t count_transversals_dlx(const LatinSquare& square);

/// Visits every k-plex once (single-threaded); stop by returning false.
void for_each_plex(const LatinSquare& square, int k, const std::function<bool(const EntrySet&)>& visit);

/// Visits every completion of `rect`, in lexicographic order of the
/// appended rows; stop by returning false.
void for_each_completion(const LatinRectangle& rect, const std::function<bool(const LatinSquare&)>& visit);
std::vector<LatinSquare> enumerate_completions(const LatinRectangle& rect);

/// Every step-type square for (b, m): each of the b*b blocks ranges over
/// all latin squares of order m, in lexicographic order of the block list.
/// Stop by returning false.
void for_each_step_type(int b, int m, const std::function<bool(const LatinSquare&)>& visit);

/// One completion found with a seeded random value order (not uniform).
/// Throws NotFound when the rectangle has no completion.
LatinSquare random_completion(const LatinRectangle& rect, std::uint64_t seed);

/// The first completion of the identity row of order 6 with no transversal
/// and a triplex.
LatinSquare find_order6_example();

} // namespace plexforge
