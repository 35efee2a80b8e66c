#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plexforge/error.hpp"

namespace plexforge {

inline constexpr int kMaxOrder = 256;

/// Reduces `value` into N_n = {0, ..., n-1}; negative values wrap.
constexpr int reduce_mod(long long value, int n) noexcept
{
    long long r = value % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

struct Entry {
    int row = 0;
    int col = 0;
    int sym = 0;

    friend constexpr auto operator<=>(const Entry&, const Entry&) = default;
};

/// The entry (x, y, x+y) of the cyclic square of order n, with all three
/// coordinates reduced mod n.
constexpr Entry cyclic_entry(int n, long long x, long long y) noexcept
{
    return Entry{reduce_mod(x, n), reduce_mod(y, n), reduce_mod(x + y, n)};
}

/// Builds an entry whose coordinates are reduced mod n.
constexpr Entry reduced_entry(int n, long long r, long long c, long long s) noexcept
{
    return Entry{reduce_mod(r, n), reduce_mod(c, n), reduce_mod(s, n)};
}

/// An order-n latin square. Instances are always valid: the only ways to
/// obtain one are from_grid() (and the parsers built on it) and
/// apply_trade(), both of which validate.
class LatinSquare {
public:
    static LatinSquare from_grid(int order, const std::vector<std::vector<int>>& rows);
    static LatinSquare from_entries(int order, std::span<const Entry> entries);

    int order() const noexcept { return order_; }
    int at(int row, int col) const noexcept { return grid_[static_cast<std::size_t>(row) * order_ + col]; }

    /// Column holding `sym` in `row`.
    int column_of(int row, int sym) const noexcept
    {
        return col_of_sym_[static_cast<std::size_t>(row) * order_ + sym];
    }

    bool contains(const Entry& e) const noexcept;
    std::vector<Entry> entries() const;
    std::vector<std::vector<int>> rows() const;

    friend bool operator==(const LatinSquare& a, const LatinSquare& b) noexcept
    {
        return a.order_ == b.order_ && a.grid_ == b.grid_;
    }

private:
    LatinSquare(int order, std::vector<std::uint8_t> grid);

    int order_;
    std::vector<std::uint8_t> grid_;
    std::vector<std::uint8_t> col_of_sym_;
};

/// k x n array, each row a permutation of N_n, no column repeats.
class LatinRectangle {
public:
    static LatinRectangle from_rows(int order, const std::vector<std::vector<int>>& rows);
    static LatinRectangle prefix_of(const LatinSquare& square, int row_count);

    int order() const noexcept { return order_; }
    int row_count() const noexcept { return static_cast<int>(rows_.size()); }
    const std::vector<std::vector<int>>& rows() const noexcept { return rows_; }

private:
    LatinRectangle(int order, std::vector<std::vector<int>> rows) : order_(order), rows_(std::move(rows)) {}

    int order_;
    std::vector<std::vector<int>> rows_;
};

/// A set of entries inside an order-n square. Duplicates are rejected.
class EntrySet {
public:
    EntrySet() = default;
    EntrySet(int order, std::vector<Entry> entries);

    int order() const noexcept { return order_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    bool contains(const Entry& e) const noexcept;

    /// Entries in ascending (row, col, sym) order.
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    EntrySet intersection(const EntrySet& other) const;
    bool disjoint_from(const EntrySet& other) const;

    friend bool operator==(const EntrySet&, const EntrySet&) = default;

private:
    int order_ = 0;
    std::vector<Entry> entries_;
};

/// A pair (T, T') of disjoint entry sets with equal projections onto each
/// pair of coordinates.
class LatinTrade {
public:
    LatinTrade(EntrySet removed, EntrySet mate);

    const EntrySet& removed() const noexcept { return removed_; }
    const EntrySet& mate() const noexcept { return mate_; }

    /// The trade (T', T), undoing this one.
    LatinTrade reversed() const { return LatinTrade(mate_, removed_); }

private:
    EntrySet removed_;
    EntrySet mate_;
};

/// Empty string when (removed, mate) is a valid trade pair, otherwise a
/// description of the first violated condition.
std::string trade_defect(const EntrySet& removed, const EntrySet& mate);

bool is_plex(const LatinSquare& square, const EntrySet& set, int k);

LatinSquare apply_trade(const LatinSquare& square, const LatinTrade& trade);

/// Entries of `square` on which the Delta_m function is nonzero.
EntrySet restrict_delta_nonzero(const LatinSquare& square, int m);

// Text formats. Square: order on the first line then one row per line.
// Rectangle: the same, with k <= n rows. Entry set: "n=<order>" then one
// "r c s" triple per line. LF line endings, no trailing blanks.
std::string to_text(const LatinSquare& square);
std::string to_text(const LatinRectangle& rect);
std::string to_text(const EntrySet& set);

LatinSquare parse_square(std::string_view text);
LatinRectangle parse_rectangle(std::string_view text);
EntrySet parse_entry_set(std::string_view text);

std::string sha256_hex(std::string_view data);

/// SHA-256 of the square text format.
std::string digest(const LatinSquare& square);

} // namespace plexforge
