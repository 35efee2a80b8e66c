#include "plexforge/core.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <set>
#include <sstream>
#include <tuple>

#include <openssl/evp.h>

#include "plexforge/analyze.hpp"

namespace plexforge {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::RowNotPermutation: return "RowNotPermutation";
    case ErrorCode::ColumnRepeat: return "ColumnRepeat";
    case ErrorCode::EntryOutOfRange: return "EntryOutOfRange";
    case ErrorCode::DuplicateEntry: return "DuplicateEntry";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::InvalidTrade: return "InvalidTrade";
    case ErrorCode::TradeNotContained: return "TradeNotContained";
    case ErrorCode::ResultNotLatin: return "ResultNotLatin";
    case ErrorCode::BadDivisor: return "BadDivisor";
    case ErrorCode::BadFactorization: return "BadFactorization";
    case ErrorCode::BlockNotLatin: return "BlockNotLatin";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::MateMismatch: return "MateMismatch";
    case ErrorCode::PlexAssertionFailed: return "PlexAssertionFailed";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

namespace {

void check_order(int order)
{
    if (order < 1 || order > kMaxOrder)
        throw Error(ErrorCode::BadDimension, "order " + std::to_string(order) + " outside [1, 256]");
}

// Validates one row as a permutation of N_n.
void check_row(int order, int index, const std::vector<int>& row)
{
    if (static_cast<int>(row.size()) != order)
        throw Error(ErrorCode::BadDimension, "row " + std::to_string(index) + " has " + std::to_string(row.size())
                                                 + " symbols, expected " + std::to_string(order));
    std::vector<bool> seen(order, false);
    for (int c = 0; c < order; ++c) {
        int s = row[c];
        if (s < 0 || s >= order)
            throw Error(ErrorCode::SymbolOutOfRange,
                        "row " + std::to_string(index) + " column " + std::to_string(c) + " holds " + std::to_string(s));
        if (seen[s])
            throw Error(ErrorCode::RowNotPermutation,
                        "row " + std::to_string(index) + " repeats symbol " + std::to_string(s));
        seen[s] = true;
    }
}

// Columns of `rows` must not repeat a symbol.
void check_columns(int order, const std::vector<std::vector<int>>& rows)
{
    for (int c = 0; c < order; ++c) {
        std::vector<bool> seen(order, false);
        for (const auto& row : rows) {
            if (seen[row[c]])
                throw Error(ErrorCode::ColumnRepeat,
                            "column " + std::to_string(c) + " repeats symbol " + std::to_string(row[c]));
            seen[row[c]] = true;
        }
    }
}

} // namespace

LatinSquare::LatinSquare(int order, std::vector<std::uint8_t> grid)
    : order_(order), grid_(std::move(grid)), col_of_sym_(grid_.size())
{
    for (int r = 0; r < order_; ++r)
        for (int c = 0; c < order_; ++c)
            col_of_sym_[static_cast<std::size_t>(r) * order_ + at(r, c)] = static_cast<std::uint8_t>(c);
}

LatinSquare LatinSquare::from_grid(int order, const std::vector<std::vector<int>>& rows)
{
    check_order(order);
    if (static_cast<int>(rows.size()) != order)
        throw Error(ErrorCode::BadDimension,
                    "expected " + std::to_string(order) + " rows, got " + std::to_string(rows.size()));
    for (int r = 0; r < order; ++r)
        check_row(order, r, rows[r]);
    check_columns(order, rows);

    std::vector<std::uint8_t> grid;
    grid.reserve(static_cast<std::size_t>(order) * order);
    for (const auto& row : rows)
        for (int s : row)
            grid.push_back(static_cast<std::uint8_t>(s));
    return LatinSquare(order, std::move(grid));
}

LatinSquare LatinSquare::from_entries(int order, std::span<const Entry> entries)
{
    check_order(order);
    if (entries.size() != static_cast<std::size_t>(order) * order)
        throw Error(ErrorCode::BadDimension, "expected " + std::to_string(order * order) + " entries, got "
                                                 + std::to_string(entries.size()));
    std::vector<std::vector<int>> rows(order, std::vector<int>(order, -1));
    for (const auto& e : entries) {
        if (e.row < 0 || e.row >= order || e.col < 0 || e.col >= order || e.sym < 0 || e.sym >= order)
            throw Error(ErrorCode::EntryOutOfRange, "entry outside N_" + std::to_string(order));
        if (rows[e.row][e.col] != -1)
            throw Error(ErrorCode::ResultNotLatin,
                        "cell (" + std::to_string(e.row) + "," + std::to_string(e.col) + ") filled twice");
        rows[e.row][e.col] = e.sym;
    }
    return from_grid(order, rows);
}

bool LatinSquare::contains(const Entry& e) const noexcept
{
    return e.row >= 0 && e.row < order_ && e.col >= 0 && e.col < order_ && at(e.row, e.col) == e.sym;
}

std::vector<Entry> LatinSquare::entries() const
{
    std::vector<Entry> out;
    out.reserve(grid_.size());
    for (int r = 0; r < order_; ++r)
        for (int c = 0; c < order_; ++c)
            out.push_back({r, c, at(r, c)});
    return out;
}

std::vector<std::vector<int>> LatinSquare::rows() const
{
    std::vector<std::vector<int>> out(order_, std::vector<int>(order_));
    for (int r = 0; r < order_; ++r)
        for (int c = 0; c < order_; ++c)
            out[r][c] = at(r, c);
    return out;
}

LatinRectangle LatinRectangle::from_rows(int order, const std::vector<std::vector<int>>& rows)
{
    check_order(order);
    if (static_cast<int>(rows.size()) > order)
        throw Error(ErrorCode::BadDimension, "rectangle has more rows than its order");
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
        check_row(order, r, rows[r]);
    check_columns(order, rows);
    return LatinRectangle(order, rows);
}

LatinRectangle LatinRectangle::prefix_of(const LatinSquare& square, int row_count)
{
    if (row_count < 0 || row_count > square.order())
        throw Error(ErrorCode::BadDimension, "prefix length " + std::to_string(row_count));
    auto rows = square.rows();
    rows.resize(row_count);
    return LatinRectangle(square.order(), std::move(rows));
}

EntrySet::EntrySet(int order, std::vector<Entry> entries) : order_(order), entries_(std::move(entries))
{
    check_order(order);
    for (const auto& e : entries_) {
        if (e.row < 0 || e.row >= order || e.col < 0 || e.col >= order || e.sym < 0 || e.sym >= order)
            throw Error(ErrorCode::EntryOutOfRange, "(" + std::to_string(e.row) + "," + std::to_string(e.col) + ","
                                                        + std::to_string(e.sym) + ") outside N_" + std::to_string(order));
    }
    std::sort(entries_.begin(), entries_.end());
    auto dup = std::adjacent_find(entries_.begin(), entries_.end());
    if (dup != entries_.end())
        throw Error(ErrorCode::DuplicateEntry, "(" + std::to_string(dup->row) + "," + std::to_string(dup->col) + ","
                                                   + std::to_string(dup->sym) + ") listed twice");
}

bool EntrySet::contains(const Entry& e) const noexcept
{
    return std::binary_search(entries_.begin(), entries_.end(), e);
}

namespace {

void require_same_order(const EntrySet& a, const EntrySet& b)
{
    if (a.order() != b.order())
        throw Error(ErrorCode::OrderMismatch,
                    "entry sets of order " + std::to_string(a.order()) + " and " + std::to_string(b.order()));
}

} // namespace

EntrySet EntrySet::intersection(const EntrySet& other) const
{
    require_same_order(*this, other);
    std::vector<Entry> out;
    std::set_intersection(entries_.begin(), entries_.end(), other.entries_.begin(), other.entries_.end(),
                          std::back_inserter(out));
    return EntrySet(order_, std::move(out));
}

bool EntrySet::disjoint_from(const EntrySet& other) const
{
    require_same_order(*this, other);
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() && b != other.entries_.end()) {
        if (*a < *b)
            ++a;
        else if (*b < *a)
            ++b;
        else
            return false;
    }
    return true;
}

std::string trade_defect(const EntrySet& removed, const EntrySet& mate)
{
    if (removed.order() != mate.order())
        return "orders differ";
    if (removed.size() != mate.size())
        return "sizes differ (" + std::to_string(removed.size()) + " vs " + std::to_string(mate.size()) + ")";
    if (!removed.disjoint_from(mate))
        return "removed and mate share an entry";

    using Pair = std::pair<int, int>;
    auto projection = [](const EntrySet& set, auto key) {
        std::vector<Pair> out;
        for (const auto& e : set)
            out.push_back(key(e));
        std::sort(out.begin(), out.end());
        return out;
    };
    const std::array<std::pair<const char*, Pair (*)(const Entry&)>, 3> keys{{
        {"(row,col)", [](const Entry& e) { return Pair{e.row, e.col}; }},
        {"(row,sym)", [](const Entry& e) { return Pair{e.row, e.sym}; }},
        {"(col,sym)", [](const Entry& e) { return Pair{e.col, e.sym}; }},
    }};
    for (const auto& [name, key] : keys) {
        auto a = projection(removed, key);
        auto b = projection(mate, key);
        if (std::adjacent_find(a.begin(), a.end()) != a.end() || std::adjacent_find(b.begin(), b.end()) != b.end())
            return std::string(name) + " projection has repeats";
        if (a != b)
            return std::string(name) + " projections differ";
    }
    return {};
}

LatinTrade::LatinTrade(EntrySet removed, EntrySet mate) : removed_(std::move(removed)), mate_(std::move(mate))
{
    if (auto defect = trade_defect(removed_, mate_); !defect.empty())
        throw Error(ErrorCode::InvalidTrade, defect);
}

bool is_plex(const LatinSquare& square, const EntrySet& set, int k)
{
    if (set.order() != square.order())
        throw Error(ErrorCode::OrderMismatch, "entry set order " + std::to_string(set.order()) + " vs square order "
                                                  + std::to_string(square.order()));
    const int n = square.order();
    if (k < 1 || set.size() != static_cast<std::size_t>(k) * n)
        return false;
    std::vector<int> rows(n), cols(n), syms(n);
    for (const auto& e : set) {
        if (!square.contains(e))
            return false;
        ++rows[e.row];
        ++cols[e.col];
        ++syms[e.sym];
    }
    auto all_k = [k](const std::vector<int>& v) { return std::all_of(v.begin(), v.end(), [k](int x) { return x == k; }); };
    return all_k(rows) && all_k(cols) && all_k(syms);
}

LatinSquare apply_trade(const LatinSquare& square, const LatinTrade& trade)
{
    const int n = square.order();
    if (trade.removed().order() != n)
        throw Error(ErrorCode::OrderMismatch, "trade order differs from square order");
    for (const auto& e : trade.removed())
        if (!square.contains(e))
            throw Error(ErrorCode::TradeNotContained, "(" + std::to_string(e.row) + "," + std::to_string(e.col) + ","
                                                          + std::to_string(e.sym) + ") is not an entry of the square");
    auto rows = square.rows();
    for (const auto& e : trade.mate())
        rows[e.row][e.col] = e.sym;
    try {
        return LatinSquare::from_grid(n, rows);
    } catch (const Error& err) {
        throw Error(ErrorCode::ResultNotLatin, err.what());
    }
}

EntrySet restrict_delta_nonzero(const LatinSquare& square, int m)
{
    const int n = square.order();
    require_odd_divisor(n, m);
    std::vector<Entry> out;
    for (const auto& e : square.entries())
        if (delta(e, n, m) != 0)
            out.push_back(e);
    return EntrySet(n, std::move(out));
}

namespace {

std::string rows_text(int order, const std::vector<std::vector<int>>& rows)
{
    std::string out = std::to_string(order) + "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c)
                out += ' ';
            out += std::to_string(row[c]);
        }
        out += '\n';
    }
    return out;
}

// Splits on LF; a trailing empty line (from the final LF) is dropped.
std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

std::vector<int> parse_ints(std::string_view line, std::size_t line_no)
{
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\r' || line[pos] == '\t'))
            ++pos;
        if (pos >= line.size())
            break;
        int value = 0;
        auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), value);
        if (ec != std::errc() || ptr == line.data() + pos)
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected an integer");
        pos = static_cast<std::size_t>(ptr - line.data());
        out.push_back(value);
    }
    return out;
}

std::pair<int, std::vector<std::vector<int>>> parse_rows(std::string_view text)
{
    auto lines = split_lines(text);
    if (lines.empty())
        throw Error(ErrorCode::ParseError, "empty input");
    auto header = parse_ints(lines[0], 1);
    if (header.size() != 1)
        throw Error(ErrorCode::ParseError, "line 1: expected the order");
    std::vector<std::vector<int>> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto row = parse_ints(lines[i], i + 1);
        if (row.empty())
            break;
        rows.push_back(std::move(row));
    }
    return {header[0], std::move(rows)};
}

} // namespace

std::string to_text(const LatinSquare& square) { return rows_text(square.order(), square.rows()); }

std::string to_text(const LatinRectangle& rect) { return rows_text(rect.order(), rect.rows()); }

std::string to_text(const EntrySet& set)
{
    std::string out = "n=" + std::to_string(set.order()) + "\n";
    for (const auto& e : set)
        out += std::to_string(e.row) + " " + std::to_string(e.col) + " " + std::to_string(e.sym) + "\n";
    return out;
}

LatinSquare parse_square(std::string_view text)
{
    auto [order, rows] = parse_rows(text);
    return LatinSquare::from_grid(order, rows);
}

LatinRectangle parse_rectangle(std::string_view text)
{
    auto [order, rows] = parse_rows(text);
    return LatinRectangle::from_rows(order, rows);
}

EntrySet parse_entry_set(std::string_view text)
{
    auto lines = split_lines(text);
    if (lines.empty() || lines[0].substr(0, 2) != "n=")
        throw Error(ErrorCode::ParseError, "line 1: expected n=<order>");
    auto header = parse_ints(lines[0].substr(2), 1);
    if (header.size() != 1)
        throw Error(ErrorCode::ParseError, "line 1: expected n=<order>");
    std::vector<Entry> entries;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto v = parse_ints(lines[i], i + 1);
        if (v.empty())
            continue;
        if (v.size() != 3)
            throw Error(ErrorCode::ParseError, "line " + std::to_string(i + 1) + ": expected r c s");
        entries.push_back({v[0], v[1], v[2]});
    }
    return EntrySet(header[0], std::move(entries));
}

std::string sha256_hex(std::string_view data)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

std::string digest(const LatinSquare& square) { return sha256_hex(to_text(square)); }

} // namespace plexforge
