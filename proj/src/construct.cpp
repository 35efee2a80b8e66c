#include "plexforge/construct.hpp"

#include <algorithm>
#include <map>

namespace plexforge {

namespace {

std::string str(int v) { return std::to_string(v); }

// Collects entries with all coordinates reduced mod n.
class EntryList {
public:
    explicit EntryList(int n) : n_(n) {}

    /// The cyclic entry (x; y).
    EntryList& cyc(long long x, long long y)
    {
        entries_.push_back(cyclic_entry(n_, x, y));
        return *this;
    }

    EntryList& add(long long r, long long c, long long s)
    {
        entries_.push_back(reduced_entry(n_, r, c, s));
        return *this;
    }

    EntryList& add(const Entry& e)
    {
        entries_.push_back(e);
        return *this;
    }

    std::vector<Entry>& entries() { return entries_; }
    EntrySet build() const { return EntrySet(n_, entries_); }

private:
    int n_;
    std::vector<Entry> entries_;
};

EntrySet shifted(const EntrySet& set, int dc, int ds)
{
    const int n = set.order();
    EntryList out(n);
    for (const auto& e : set)
        out.add(e.row, e.col + dc, e.sym + ds);
    return out.build();
}

LatinTrade make_trade(EntrySet removed, EntrySet mate, const std::string& name)
{
    if (auto defect = trade_defect(removed, mate); !defect.empty())
        throw Error(ErrorCode::MateMismatch, name + ": " + defect);
    return LatinTrade(std::move(removed), std::move(mate));
}

// Row-pair trade {(r0; c), (r1; c) : c in cols} inside B_n; the mate swaps
// the two symbols of each column.
LatinTrade column_swap_trade(int n, int r0, int r1, const std::vector<int>& cols, const std::string& name)
{
    EntryList removed(n), mate(n);
    for (int c : cols) {
        removed.cyc(r0, c).cyc(r1, c);
        mate.add(r0, c, r1 + c).add(r1, c, r0 + c);
    }
    return make_trade(removed.build(), mate.build(), name);
}

// ---- Order 2km, k-plex without smaller odd plexes -----------------------

EntrySet kk2_J(const KK2Params& p)
{
    const int k = p.k, m = p.m, n = p.order();
    EntryList J(n);
    for (int j = 0; j < k; ++j) {
        for (int i = 1; i <= m; ++i)
            J.cyc(i, 2 * j * m + i - 1);
        for (int i = m; i <= 2 * m - 1; ++i)
            J.cyc(i, 2 * j * m + i);
        for (int l = 1; l <= (k - 1) / 2; ++l)
            for (int i = 0; i <= 2 * m - 1; ++i) {
                J.cyc(2 * m * (2 * l - 1) + i, 2 * j * m + i);
                J.cyc(4 * m * l + i, 2 * j * m + i + 1);
            }
    }
    return J.build();
}

std::vector<LatinTrade> kk2_trades(const KK2Params& p)
{
    std::vector<int> cols;
    for (int j = 0; j < 2 * p.k; ++j)
        cols.push_back(j * p.m);
    return {column_swap_trade(p.order(), 0, p.m, cols, "T")};
}

// ---- n divisible by 4 -------------------------------------------------

EntrySet mod4_J(int n)
{
    const int q = n / 4;
    EntryList J(n);
    for (int y = 0; y <= 4; ++y)
        J.cyc(0, y);
    for (int i = 1; i <= q - 1; ++i)
        J.cyc(i, 3 * i + 2).cyc(i, 3 * i + 3).cyc(i, 3 * i + 4);
    J.cyc(q, 3 * q + 2);
    for (int i = q + 1; i <= n / 2 - 1; ++i)
        J.cyc(i, 3 * i).cyc(i, 3 * i + 1).cyc(i, 3 * i + 2);
    for (int i = n / 2; i <= n - 1; ++i)
        J.cyc(i, i - n / 2 + 1).cyc(i, i).cyc(i, i + 1);
    return J.build();
}

// T_i: the cells of rows 0 and n/4 whose symbols are congruent to i mod n/4.
std::vector<LatinTrade> mod4_trades(int n)
{
    const int q = n / 4;
    std::vector<LatinTrade> out;
    for (int i = 0; i < 2; ++i) {
        std::vector<int> cols;
        for (int t = 0; t < 4; ++t)
            cols.push_back(i + t * q);
        out.push_back(column_swap_trade(n, 0, q, cols, "T_" + str(i)));
    }
    return out;
}

// ---- n = 12m - 2 ------------------------------------------------------

EntrySet mod10_J(int m)
{
    const int n = 12 * m - 2;
    EntryList J(n);
    for (int i = 1; i <= 2 * m - 1; ++i)
        J.cyc(i, 3 * i - 2).cyc(i, 3 * i - 1).cyc(i, 3 * i);
    J.cyc(2 * m - 1, 6 * m + 1).cyc(2 * m, 6 * m - 2).cyc(2 * m, 6 * m - 1);
    for (int i = 2 * m; i <= n / 2 - 1; ++i)
        J.cyc(i, 3 * i + 2).cyc(i, 3 * i + 3).cyc(i, 3 * i + 4);
    for (int i = n / 2; i <= n - 1; ++i)
        J.cyc(i, i - n / 2).cyc(i, i).cyc(i, i + 1);
    return J.build();
}

std::vector<LatinTrade> mod10_trades(int m)
{
    const int n = 12 * m - 2;

    EntryList t0(n), t0m(n);
    for (int j = 1; j <= 4; ++j)
        for (int i = 0; i <= 2 * m - 1; ++i)
            t0.cyc(i, 2 * j * m).cyc(i, 2 * j * m + 1);
    t0.cyc(0, 1).cyc(2 * m - 1, 1).cyc(0, 10 * m).cyc(2 * m - 1, 10 * m);

    for (int j = 1; j <= 4; ++j) {
        for (int i = 1; i < 2 * m - 1; ++i)
            t0m.add(i, 2 * j * m, i + 2 * j * m + 1).add(i, 2 * j * m + 1, i + 2 * j * m);
        t0m.add(0, 2 * j * m, 2 * j * m + 1)
            .add(0, 2 * j * m + 1, 2 * (j + 1) * m)
            .add(2 * m - 1, 2 * j * m, 2 * j * m)
            .add(2 * m - 1, 2 * j * m + 1, 2 * (j + 1) * m - 1);
    }
    t0m.add(0, 1, 2 * m).add(2 * m - 1, 1, 1).add(0, 10 * m, 1).add(2 * m - 1, 10 * m, 10 * m);

    EntryList t1(n), t1m(n);
    for (int j = 1; j <= 4; ++j)
        t1.cyc(0, 2 * j * m - 2).cyc(2 * m, 2 * j * m - 2);
    t1.cyc(0, 10 * m - 2).cyc(2 * m, 12 * m - 4);
    for (int i = 0; i <= m - 1; ++i)
        t1.cyc(2 * i, 12 * m - 4 - 2 * i).cyc(2 * i + 2, 12 * m - 4 - 2 * i);

    for (int j = 1; j <= 4; ++j)
        t1m.add(0, 2 * j * m - 2, 2 * (j + 1) * m - 2).add(2 * m, 2 * j * m - 2, 2 * j * m - 2);
    t1m.add(0, 10 * m - 2, 12 * m - 4).add(0, 12 * m - 4, 2 * m - 2);
    t1m.add(2 * m, 10 * m - 2, 10 * m - 2).add(2 * m, 12 * m - 4, 0);
    for (int i = 1; i <= m - 1; ++i)
        t1m.add(2 * i, 12 * m - 4 - 2 * i, 0).add(2 * i, 12 * m - 2 - 2 * i, 12 * m - 4);

    auto trade0 = make_trade(t0.build(), t0m.build(), "T_0");
    auto trade1 = make_trade(t1.build(), t1m.build(), "T_1");
    auto trade2 = make_trade(shifted(trade1.removed(), 5, 5), shifted(trade1.mate(), 5, 5), "T_2");
    return {trade0, trade1, trade2};
}

// ---- n = 12m + 2 ------------------------------------------------------

EntrySet mod2_J(int m)
{
    const int n = 12 * m + 2;
    EntryList J(n);
    for (int i = 1; i <= 2 * m; ++i)
        J.cyc(i, 3 * i - 2).cyc(i, 3 * i - 1).cyc(i, 3 * i);
    J.cyc(2 * m, 6 * m + 3).cyc(2 * m, 6 * m + 4).cyc(2 * m + 1, 6 * m + 1);
    for (int i = 2 * m + 1; i <= n / 2 - 1; ++i)
        J.cyc(i, 3 * i + 2).cyc(i, 3 * i + 3).cyc(i, 3 * i + 4);
    for (int i = n / 2; i <= n - 1; ++i)
        J.cyc(i, i - n / 2).cyc(i, i).cyc(i, i + 1);
    return J.build();
}

std::vector<LatinTrade> mod2_trades(int m)
{
    const int n = 12 * m + 2;

    EntryList t0(n), t0m(n);
    for (int j = 3; j <= 6; ++j)
        t0.cyc(0, 2 * j * m - 2).cyc(2 * m, 2 * j * m - 2);
    for (int i = 0; i <= 2 * m; ++i)
        t0.cyc(i, 2 * m - 4).cyc(i, 2 * m - 3).cyc(i, 4 * m - 3).cyc(i, 4 * m - 2);

    for (int j = 3; j <= 6; ++j)
        t0m.add(0, 2 * j * m - 2, 2 * (j + 1) * m - 2).add(2 * m, 2 * j * m - 2, 2 * j * m - 2);
    t0m.add(0, 2 * m - 4, 2 * m - 3).add(0, 2 * m - 3, 4 * m - 3).add(2 * m, 2 * m - 4, 2 * m - 4);
    t0m.add(2 * m, 2 * m - 3, 4 * m - 4).add(0, 4 * m - 3, 4 * m - 2).add(0, 4 * m - 2, 6 * m - 2);
    t0m.add(2 * m, 4 * m - 3, 4 * m - 3).add(2 * m, 4 * m - 2, 6 * m - 3);
    for (int i = 1; i < 2 * m; ++i)
        t0m.add(i, 2 * m - 4, 2 * m + i - 3)
            .add(i, 2 * m - 3, 2 * m + i - 4)
            .add(i, 4 * m - 3, 4 * m + i - 2)
            .add(i, 4 * m - 2, 4 * m + i - 3);

    const int w = 2 * m + 1;
    EntryList t1(n), t1m(n);
    for (int j = 0; j <= 4; ++j)
        t1.cyc(0, w * j - 2).cyc(w, w * j - 2);
    t1.cyc(0, 10 * m + 1).cyc(1, 10 * m).cyc(1, 10 * m + 1).cyc(2, 10 * m).cyc(2, 10 * m + 1);
    t1.cyc(w, 10 * m + 1).cyc(1, 12 * m - 1).cyc(1, 12 * m).cyc(2, 12 * m - 1).cyc(2, 12 * m);
    for (int i = 0; i <= m - 2; ++i)
        t1.cyc(2 * i + 3, 10 * m - 2 * i - 2)
            .cyc(2 * i + 3, 10 * m - 2 * i)
            .cyc(2 * i + 3, 12 * m - 2 * i - 3)
            .cyc(2 * i + 3, 12 * m - 2 * i - 1);

    for (int j = 1; j <= 3; ++j)
        t1m.add(0, w * j - 2, w * (j + 1) - 2).add(w, w * j - 2, w * j - 2);
    t1m.add(0, 12 * m, 2 * m - 1).add(w, 12 * m, 0).add(0, 8 * m + 2, 10 * m + 1);
    t1m.add(w, 8 * m + 2, 8 * m + 2).add(0, 10 * m + 1, 12 * m).add(1, 10 * m, 10 * m + 2);
    t1m.add(1, 10 * m + 1, 10 * m + 1).add(2, 10 * m, 10 * m + 3).add(2, 10 * m + 1, 10 * m + 2);
    t1m.add(w, 10 * m + 1, 10 * m + 3).add(1, 12 * m - 1, 12 * m + 1).add(1, 12 * m, 12 * m);
    t1m.add(2, 12 * m - 1, 0).add(2, 12 * m, 12 * m + 1);
    for (int i = 0; i <= m - 2; ++i)
        t1m.add(2 * i + 3, 10 * m - 2 * i - 2, 10 * m + 3)
            .add(2 * i + 3, 10 * m - 2 * i, 10 * m + 1)
            .add(2 * i + 3, 12 * m - 2 * i - 3, 0)
            .add(2 * i + 3, 12 * m - 2 * i - 1, 12 * m);

    auto trade0 = make_trade(t0.build(), t0m.build(), "T_0");
    auto trade1 = make_trade(t1.build(), t1m.build(), "T_1");
    auto trade2 = make_trade(shifted(trade0.removed(), 6, 6), shifted(trade0.mate(), 6, 6), "T_2");
    return {trade0, trade1, trade2};
}

int ceil_div3(int x) { return (x + 2) / 3; }

// J with `drop` removed and `add` inserted; every dropped entry must lie in
// J and every added one in the target square.
EntrySet adjust(const EntrySet& J, const LatinSquare& target, const std::vector<Entry>& drop, const std::vector<Entry>& add)
{
    std::vector<Entry> out;
    for (const auto& e : drop)
        if (!J.contains(e))
            throw Error(ErrorCode::PlexAssertionFailed, "(" + str(e.row) + "," + str(e.col) + "," + str(e.sym)
                                                            + ") is not in J");
    for (const auto& e : J)
        if (std::find(drop.begin(), drop.end(), e) == drop.end())
            out.push_back(e);
    for (const auto& e : add) {
        if (!target.contains(e))
            throw Error(ErrorCode::PlexAssertionFailed, "(" + str(e.row) + "," + str(e.col) + "," + str(e.sym)
                                                            + ") is not an entry of the modified square");
        out.push_back(e);
    }
    return EntrySet(J.order(), std::move(out));
}

// Each entry of J that a trade removes moves to the mate entry with the
// same (column, symbol).
EntrySet relocate_rows(const EntrySet& J, const std::vector<LatinTrade>& trades, const LatinSquare& target)
{
    std::vector<Entry> drop, add;
    for (const auto& trade : trades)
        for (const auto& e : J.intersection(trade.removed())) {
            auto it = std::find_if(trade.mate().begin(), trade.mate().end(),
                                   [&](const Entry& f) { return f.col == e.col && f.sym == e.sym; });
            if (it == trade.mate().end())
                throw Error(ErrorCode::PlexAssertionFailed, "no mate entry shares column and symbol");
            drop.push_back(e);
            add.push_back(*it);
        }
    return adjust(J, target, drop, add);
}

Entry at_cell(const LatinSquare& square, int r, int c)
{
    const int n = square.order();
    r = reduce_mod(r, n);
    c = reduce_mod(c, n);
    return {r, c, square.at(r, c)};
}

EntrySet mod10_plex(int m, const LatinSquare& target)
{
    const int n = 12 * m - 2;
    auto J = mod10_J(m);
    std::vector<Entry> drop = {cyclic_entry(n, 2 * m, 6 * m - 2), cyclic_entry(n, 2 * m, 6 * m + 3),
                               cyclic_entry(n, 2 * m - 1, 6 * m + 1)};
    std::vector<Entry> add = {reduced_entry(n, 0, 6 * m - 2, 8 * m - 2), reduced_entry(n, 0, 6 * m + 3, 8 * m + 3),
                              reduced_entry(n, 0, 6 * m + 1, 8 * m)};
    for (int x : {2 * m, 2 * m + 1, 4 * m, 4 * m + 1})
        drop.push_back(cyclic_entry(n, ceil_div3(x), x));
    // Pairs (x, partner): the replacement sits in row ceil(x/3), column partner.
    for (auto [x, partner] : {std::pair{2 * m, 2 * m + 1}, {2 * m + 1, 2 * m}, {4 * m, 4 * m + 1}, {4 * m + 1, 4 * m}})
        add.push_back(at_cell(target, ceil_div3(x), partner));
    return adjust(J, target, drop, add);
}

EntrySet mod2_plex(int m, const LatinSquare& target)
{
    const int n = 12 * m + 2;
    auto J = mod2_J(m);
    std::vector<Entry> drop = {cyclic_entry(n, 2 * m, 6 * m - 2), cyclic_entry(n, 2 * m, 6 * m + 4),
                               cyclic_entry(n, 2 * m + 1, 6 * m + 1)};
    std::vector<Entry> add = {reduced_entry(n, 0, 6 * m - 2, 8 * m - 2), reduced_entry(n, 0, 6 * m + 4, 8 * m + 4),
                              reduced_entry(n, 0, 6 * m + 1, 8 * m + 2)};
    const std::pair<int, int> swaps[] = {
        {2 * m - 4, 2 * m - 3}, {2 * m - 3, 2 * m - 4}, {2 * m + 2, 2 * m + 3}, {2 * m + 3, 2 * m + 2},
        {4 * m - 3, 4 * m - 2}, {4 * m - 2, 4 * m - 3}, {4 * m + 3, 4 * m + 4}, {4 * m + 4, 4 * m + 3},
    };
    for (auto [x, partner] : swaps) {
        drop.push_back(cyclic_entry(n, ceil_div3(x), x));
        add.push_back(at_cell(target, ceil_div3(x), partner));
    }
    return adjust(J, target, drop, add);
}

// Column lists for rows h + floor(n/6) .. n-1 of the small-order triplexes.
const std::map<int, std::vector<std::vector<int>>>& small_order_tables()
{
    static const std::map<int, std::vector<std::vector<int>>> tables = {
        {10, {{6, 7, 9}, {0, 5, 8}, {1, 2, 3}, {3, 4, 9}}},
        {14, {{6, 10, 11}, {0, 4, 13}, {7, 8, 13}, {3, 5, 9}, {1, 2, 12}}},
        {18, {{1, 13, 14}, {0, 5, 10}, {11, 15, 16}, {6, 9, 12}, {4, 7, 17}, {2, 3, 17}}},
        {22, {{17, 18, 21}, {14, 15, 16}, {12, 20, 21}, {0, 8, 9}, {1, 7, 9}, {4, 6, 10}, {2, 3, 13}, {5, 11, 19}}},
        {26,
         {{19, 20, 25}, {13, 16, 21}, {14, 18, 22}, {9, 15, 23}, {2, 11, 17}, {8, 24, 25}, {1, 10, 12}, {3, 4, 5},
          {0, 6, 7}}},
        {34,
         {{2, 25, 26}, {27, 28, 32}, {23, 29, 33}, {20, 21, 24}, {13, 17, 19}, {12, 14, 15}, {10, 15, 16}, {3, 6, 11},
          {1, 7, 33}, {18, 30, 31}, {4, 5, 22}, {0, 8, 9}}},
        {38,
         {{18, 19, 20}, {21, 23, 25}, {26, 28, 29}, {0, 10, 27}, {30, 31, 32}, {33, 34, 35}, {2, 36, 37}, {3, 22, 37},
          {1, 6, 24}, {4, 7, 14}, {8, 9, 11}, {15, 16, 17}, {5, 12, 13}}},
        {46,
         {{1, 34, 35}, {36, 37, 38}, {31, 33, 39}, {29, 40, 42}, {26, 27, 45}, {19, 20, 28}, {21, 23, 25}, {16, 18, 21},
          {13, 14, 43}, {2, 3, 4}, {17, 44, 45}, {5, 6, 8}, {9, 30, 41}, {7, 10, 24}, {15, 22, 32}, {0, 11, 12}}},
        {50,
         {{2, 37, 38}, {39, 40, 49}, {32, 36, 44}, {33, 41, 42}, {30, 31, 35}, {25, 27, 43}, {23, 24, 47}, {20, 21, 29},
          {16, 17, 48}, {3, 22, 49}, {1, 4, 5}, {7, 15, 46}, {8, 10, 14}, {6, 11, 19}, {9, 26, 28}, {18, 34, 45},
          {0, 12, 13}}},
        {62,
         {{30, 31, 32}, {1, 46, 47}, {48, 49, 50}, {39, 40, 42}, {51, 52, 54}, {41, 45, 55}, {43, 53, 56},
          {35, 37, 59}, {33, 38, 60}, {3, 5, 61}, {6, 34, 61}, {7, 27, 28}, {24, 25, 26}, {4, 9, 21}, {10, 12, 58},
          {17, 18, 19}, {13, 14, 20}, {8, 11, 23}, {22, 36, 57}, {2, 29, 44}, {0, 15, 16}}},
    };
    return tables;
}

void require_plex(const LatinSquare& square, const EntrySet& set, int k, const std::string& what)
{
    if (!is_plex(square, set, k))
        throw Error(ErrorCode::PlexAssertionFailed, what + " is not a " + str(k) + "-plex");
}

} // namespace

StepParams StepParams::uniform(int b, const Grid& block)
{
    StepParams p;
    p.b = b;
    p.m = static_cast<int>(block.size());
    p.blocks.assign(b, std::vector<Grid>(b, block));
    return p;
}

int TriplexVariant::m() const noexcept
{
    switch (family) {
    case TriplexFamily::Mod4: return n / 4;
    case TriplexFamily::Mod10of12: return (n + 2) / 12;
    case TriplexFamily::Mod2of12: return (n - 2) / 12;
    case TriplexFamily::SmallOrder: return (n - 2) / 4;
    }
    return 0;
}

void validate(const Construction& variant)
{
    if (const auto* p = std::get_if<KK2Params>(&variant)) {
        if (p->k < 1 || p->k % 2 == 0 || p->m < 2 || p->order() > kMaxOrder)
            throw Error(ErrorCode::BadParams, "need odd k >= 1, m >= 2, 2km <= 256; got k=" + str(p->k) + " m=" + str(p->m));
        return;
    }
    const auto& v = std::get<TriplexVariant>(variant);
    const int n = v.n;
    bool ok = n >= 1 && n <= kMaxOrder;
    switch (v.family) {
    case TriplexFamily::Mod4: ok = ok && n % 4 == 0 && n >= 8; break;
    case TriplexFamily::Mod10of12: ok = ok && (n + 2) % 12 == 0 && v.m() >= 5; break;
    case TriplexFamily::Mod2of12: ok = ok && (n - 2) % 12 == 0 && v.m() >= 6; break;
    case TriplexFamily::SmallOrder:
        ok = ok && std::find(std::begin(kSmallOrders), std::end(kSmallOrders), n) != std::end(kSmallOrders);
        break;
    }
    if (!ok)
        throw Error(ErrorCode::BadParams, "order " + str(n) + " is outside the family's supported range");
}

int order_of(const Construction& variant)
{
    if (const auto* p = std::get_if<KK2Params>(&variant))
        return p->order();
    return std::get<TriplexVariant>(variant).n;
}

int plex_size(const Construction& variant)
{
    if (const auto* p = std::get_if<KK2Params>(&variant))
        return p->k;
    return 3;
}

LatinSquare build_cyclic(int n)
{
    if (n < 1 || n > kMaxOrder)
        throw Error(ErrorCode::BadDimension, "order " + str(n));
    Grid rows(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rows[i][j] = (i + j) % n;
    return LatinSquare::from_grid(n, rows);
}

LatinSquare build_step_type(const StepParams& p)
{
    if (p.b < 2 || p.b % 2 != 0 || p.m < 1 || p.m % 2 == 0 || p.b * p.m > kMaxOrder)
        throw Error(ErrorCode::BadParams, "need even b and odd m");
    if (static_cast<int>(p.blocks.size()) != p.b)
        throw Error(ErrorCode::BadParams, "expected " + str(p.b) + " block rows");
    const int n = p.b * p.m;
    Grid rows(n, std::vector<int>(n));
    for (int alpha = 0; alpha < p.b; ++alpha) {
        if (static_cast<int>(p.blocks[alpha].size()) != p.b)
            throw Error(ErrorCode::BadParams, "block row " + str(alpha) + " has the wrong length");
        for (int gamma = 0; gamma < p.b; ++gamma) {
            const auto& block = p.blocks[alpha][gamma];
            try {
                (void)LatinSquare::from_grid(p.m, block);
            } catch (const Error& e) {
                throw Error(ErrorCode::BlockNotLatin, "block (" + str(alpha) + "," + str(gamma) + "): " + e.what());
            }
            const int offset = ((alpha + gamma) % p.b) * p.m;
            for (int x = 0; x < p.m; ++x)
                for (int y = 0; y < p.m; ++y)
                    rows[alpha * p.m + x][gamma * p.m + y] = offset + block[x][y];
        }
    }
    return LatinSquare::from_grid(n, rows);
}

EntrySet build_J(const Construction& variant)
{
    validate(variant);
    if (const auto* p = std::get_if<KK2Params>(&variant))
        return kk2_J(*p);
    const auto& v = std::get<TriplexVariant>(variant);
    switch (v.family) {
    case TriplexFamily::Mod4: return mod4_J(v.n);
    case TriplexFamily::Mod10of12: return mod10_J(v.m());
    case TriplexFamily::Mod2of12: return mod2_J(v.m());
    case TriplexFamily::SmallOrder: break;
    }
    throw Error(ErrorCode::BadParams, "the small-order construction has no J-set");
}

std::vector<LatinTrade> build_trades(const Construction& variant)
{
    validate(variant);
    if (const auto* p = std::get_if<KK2Params>(&variant))
        return kk2_trades(*p);
    const auto& v = std::get<TriplexVariant>(variant);
    std::vector<LatinTrade> trades;
    switch (v.family) {
    case TriplexFamily::Mod4: trades = mod4_trades(v.n); break;
    case TriplexFamily::Mod10of12: trades = mod10_trades(v.m()); break;
    case TriplexFamily::Mod2of12: trades = mod2_trades(v.m()); break;
    case TriplexFamily::SmallOrder: return {};
    }
    for (std::size_t a = 0; a < trades.size(); ++a)
        for (std::size_t b = a + 1; b < trades.size(); ++b)
            if (!trades[a].removed().disjoint_from(trades[b].removed()))
                throw Error(ErrorCode::MateMismatch, "T_" + str(static_cast<int>(a)) + " and T_" + str(static_cast<int>(b))
                                                         + " overlap");
    return trades;
}

int mod4_square_index(int n)
{
    validate(TriplexVariant::mod4(n));
    if (n == 8)
        return 2;
    if (n == 12 || n == 16)
        return 1;
    return 3;
}

LatinSquare build_mod4_square(int n, int index)
{
    auto trades = build_trades(TriplexVariant::mod4(n));
    auto square = build_cyclic(n);
    if (index < 1 || index > 3)
        throw Error(ErrorCode::BadParams, "L_" + str(index) + " is not defined");
    if (index == 1 || index == 3)
        square = apply_trade(square, trades[0]);
    if (index == 2 || index == 3)
        square = apply_trade(square, trades[1]);
    return square;
}

LatinSquare build_modified_square(const Construction& variant)
{
    validate(variant);
    if (const auto* v = std::get_if<TriplexVariant>(&variant)) {
        if (v->family == TriplexFamily::SmallOrder)
            return build_special_square(v->n);
        if (v->family == TriplexFamily::Mod4)
            return build_mod4_square(v->n, mod4_square_index(v->n));
    }
    auto square = build_cyclic(order_of(variant));
    for (const auto& trade : build_trades(variant))
        square = apply_trade(square, trade);
    return square;
}

EntrySet build_plex(const Construction& variant)
{
    validate(variant);
    const auto target = build_modified_square(variant);
    const int k = plex_size(variant);
    EntrySet plex;
    if (std::holds_alternative<KK2Params>(variant)) {
        plex = relocate_rows(build_J(variant), build_trades(variant), target);
    } else {
        const auto& v = std::get<TriplexVariant>(variant);
        switch (v.family) {
        case TriplexFamily::Mod4: {
            auto trades = build_trades(variant);
            const int index = mod4_square_index(v.n);
            std::vector<LatinTrade> used;
            if (index == 1 || index == 3)
                used.push_back(trades[0]);
            if (index == 2 || index == 3)
                used.push_back(trades[1]);
            plex = relocate_rows(build_J(variant), used, target);
            break;
        }
        case TriplexFamily::Mod10of12: plex = mod10_plex(v.m(), target); break;
        case TriplexFamily::Mod2of12: plex = mod2_plex(v.m(), target); break;
        case TriplexFamily::SmallOrder: return build_special_triplex(v.n);
        }
    }
    require_plex(target, plex, k, "adjusted J");
    return plex;
}

LatinSquare build_special_square(int n)
{
    if (n < 10 || n % 4 != 2 || n > kMaxOrder)
        throw Error(ErrorCode::BadOrder, "need n = 4m + 2 >= 10, got " + str(n));
    const int m = (n - 2) / 4;
    auto in = [](int j, std::initializer_list<int> set) { return std::find(set.begin(), set.end(), j) != set.end(); };
    Grid rows(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int offset = 0;
            if (n - 1 - m <= i && i <= n - 2 && in(j, {m, 3 * m + 1}))
                offset = 1;
            else if (n - m <= i && in(j, {m + 1, 3 * m + 2}))
                offset = -1;
            else if (i == n - 1 - m && in(j, {0, m + 1, 2 * m + 1, 3 * m + 2}))
                offset = m;
            else if (i == n - 1 && in(j, {0, m, 2 * m + 1, 3 * m + 1}))
                offset = -m;
            rows[i][j] = reduce_mod(i + j + offset, n);
        }
    try {
        return LatinSquare::from_grid(n, rows);
    } catch (const Error& e) {
        throw Error(ErrorCode::ResultNotLatin, e.what());
    }
}

EntrySet build_special_triplex(int n)
{
    const auto& tables = small_order_tables();
    auto it = tables.find(n);
    if (it == tables.end())
        throw Error(ErrorCode::UnsupportedOrder, "no triplex table for order " + str(n));
    const auto square = build_special_square(n);
    const int h = n / 2;
    const int sixth = n / 6;
    std::vector<Entry> entries;
    auto take = [&](int row, std::initializer_list<int> cols) {
        for (int c : cols)
            entries.push_back(at_cell(square, row, c));
    };
    for (int i = 0; i < h; ++i)
        take(i, {i, i + h - 1, i + h});
    for (int i = h; i < h + sixth; ++i)
        take(i, {3 * (i - h), 3 * (i - h) + 1, 3 * (i - h) + 2});
    const auto& rows = it->second;
    if (static_cast<int>(rows.size()) != n - h - sixth)
        throw Error(ErrorCode::PlexAssertionFailed, "table for order " + str(n) + " has the wrong length");
    for (std::size_t t = 0; t < rows.size(); ++t)
        for (int c : rows[t])
            entries.push_back(at_cell(square, h + sixth + static_cast<int>(t), c));
    EntrySet plex(n, std::move(entries));
    require_plex(square, plex, 3, "triplex of L_" + str(n));
    return plex;
}

} // namespace plexforge
