#pragma once

#include <variant>
#include <vector>

#include "plexforge/core.hpp"

namespace plexforge {

using Grid = std::vector<std::vector<int>>;

/// A b x b arrangement of order-m latin blocks (b even, m odd). Block
/// (alpha, gamma) lands in the cells with row block alpha and column
/// block gamma, its symbols offset by ((alpha + gamma) mod b) * m.
struct StepParams {
    int b = 2;
    int m = 1;
    std::vector<std::vector<Grid>> blocks;

    /// All blocks equal to `block`.
    static StepParams uniform(int b, const Grid& block);
};

/// Order 2km square with a k-plex and no smaller odd plex (k odd, m >= 2).
struct KK2Params {
    int k = 3;
    int m = 2;
    int order() const noexcept { return 2 * k * m; }
};

enum class TriplexFamily { Mod4, Mod10of12, Mod2of12, SmallOrder };

/// Triplex-but-no-transversal constructions, keyed by family and order.
struct TriplexVariant {
    TriplexFamily family = TriplexFamily::Mod4;
    int n = 8;

    static TriplexVariant mod4(int n) { return {TriplexFamily::Mod4, n}; }
    /// n = 12m - 2.
    static TriplexVariant mod10of12(int m) { return {TriplexFamily::Mod10of12, 12 * m - 2}; }
    /// n = 12m + 2.
    static TriplexVariant mod2of12(int m) { return {TriplexFamily::Mod2of12, 12 * m + 2}; }
    static TriplexVariant small_order(int n) { return {TriplexFamily::SmallOrder, n}; }

    /// The family parameter m (n/4 for Mod4, (n-2)/4 for SmallOrder).
    int m() const noexcept;
};

using Construction = std::variant<KK2Params, TriplexVariant>;

/// Orders for which the small-order table construction is available.
inline constexpr int kSmallOrders[] = {10, 14, 18, 22, 26, 34, 38, 46, 50, 62};

/// Throws BadParams when the parameters fall outside the supported range.
void validate(const Construction& variant);
int order_of(const Construction& variant);
int plex_size(const Construction& variant);

LatinSquare build_cyclic(int n);
LatinSquare build_step_type(const StepParams& params);

/// The near-plex J inside B_n. SmallOrder has no J (BadParams).
EntrySet build_J(const Construction& variant);

/// Trades inside B_n, each with its mate, pairwise disjoint. Mod4 returns
/// [T_0, T_1]; Mod10of12 and Mod2of12 return [T_0, T_1, T_2]; SmallOrder
/// returns none.
std::vector<LatinTrade> build_trades(const Construction& variant);

/// Mod4 only: which of the squares L_1 = B_n with T_0 traded, L_2 = with
/// T_1 traded, L_3 = with both, carries the triplex (n = 8 -> 2,
/// n in {12, 16} -> 1, n >= 20 -> 3).
int mod4_square_index(int n);
LatinSquare build_mod4_square(int n, int index);

/// B_n with the variant's trades applied (L_n itself for SmallOrder).
LatinSquare build_modified_square(const Construction& variant);

/// The adjusted J: a verified plex of build_modified_square(variant).
EntrySet build_plex(const Construction& variant);

/// L_n for n = 4m + 2 >= 10.
LatinSquare build_special_square(int n);

/// The triplex P of L_n for the ten tabulated orders.
EntrySet build_special_triplex(int n);

} // namespace plexforge
