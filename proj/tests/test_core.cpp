#include "doctest.h"

#include <functional>

#include "plexforge/construct.hpp"
#include "plexforge/core.hpp"
#include "plexforge/error.hpp"

using namespace plexforge;

namespace {

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::ParseError;
}

} // namespace

TEST_CASE("from_grid validates")
{
    const auto b2 = LatinSquare::from_grid(2, {{0, 1}, {1, 0}});
    CHECK(b2 == build_cyclic(2));
    CHECK(code_of([] { LatinSquare::from_grid(2, {{0, 0}, {1, 1}}); }) == ErrorCode::RowNotPermutation);
    CHECK(code_of([] { LatinSquare::from_grid(2, {{0, 1}, {0, 1}}); }) == ErrorCode::ColumnRepeat);
    CHECK(code_of([] { LatinSquare::from_grid(2, {{0, 2}, {1, 0}}); }) == ErrorCode::SymbolOutOfRange);
    CHECK(code_of([] { LatinSquare::from_grid(3, {{0, 1}, {1, 0}}); }) == ErrorCode::BadDimension);
    CHECK(code_of([] { LatinSquare::from_grid(0, {}); }) == ErrorCode::BadDimension);

    const auto b12 = build_cyclic(12);
    CHECK(LatinSquare::from_grid(12, b12.rows()) == b12);
    for (int r = 0; r < 12; ++r)
        for (int c = 0; c < 12; ++c)
            CHECK(b12.column_of(r, b12.at(r, c)) == c);
}

TEST_CASE("entry sets reject duplicates and stray coordinates")
{
    CHECK(code_of([] { EntrySet(3, {{0, 0, 0}, {0, 0, 0}}); }) == ErrorCode::DuplicateEntry);
    CHECK(code_of([] { EntrySet(3, {{0, 3, 0}}); }) == ErrorCode::EntryOutOfRange);
    const EntrySet a(4, {{1, 1, 2}, {0, 0, 0}});
    CHECK(a.entries().front() == Entry{0, 0, 0});
    const EntrySet b(4, {{1, 1, 2}, {3, 3, 2}});
    CHECK(a.intersection(b).size() == 1);
    CHECK_FALSE(a.disjoint_from(b));
    CHECK(code_of([&] { (void)a.intersection(EntrySet(5, {})); }) == ErrorCode::OrderMismatch);
}

TEST_CASE("is_plex")
{
    const auto b5 = build_cyclic(5);
    std::vector<Entry> diag;
    for (int i = 0; i < 5; ++i)
        diag.push_back({i, i, 2 * i % 5});
    CHECK(is_plex(b5, EntrySet(5, diag), 1));
    CHECK_FALSE(is_plex(b5, EntrySet(5, diag), 2));

    const auto all = EntrySet(5, b5.entries());
    CHECK(is_plex(b5, all, 5));

    // Right shape but a symbol repeats.
    std::vector<Entry> bad;
    for (int i = 0; i < 5; ++i)
        bad.push_back({i, (5 - i) % 5, 0});
    CHECK(is_plex(b5, EntrySet(5, bad), 1) == false);

    // The near-plex J of the 2km family leaves row 0 empty.
    const auto J = build_J(KK2Params{3, 3});
    CHECK_FALSE(is_plex(build_cyclic(18), J, 3));
}

TEST_CASE("trades: order 2 intercalate and validation")
{
    const auto b2 = build_cyclic(2);
    const LatinTrade t(EntrySet(2, b2.entries()), EntrySet(2, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}}));
    const auto other = apply_trade(b2, t);
    CHECK(other == LatinSquare::from_grid(2, {{1, 0}, {0, 1}}));
    CHECK(apply_trade(other, t.reversed()) == b2);

    CHECK(trade_defect(EntrySet(2, {{0, 0, 0}}), EntrySet(2, {{0, 0, 0}})) != "");
    CHECK(code_of([] { LatinTrade(EntrySet(3, {{0, 0, 0}}), EntrySet(3, {{0, 1, 0}})); }) == ErrorCode::InvalidTrade);
    CHECK(code_of([&] { (void)apply_trade(other, t); }) == ErrorCode::TradeNotContained);
}

TEST_CASE("trades from the constructions are involutions with equal projections")
{
    const std::vector<Construction> variants{KK2Params{3, 2},          KK2Params{5, 3},
                                             TriplexVariant::mod4(8),  TriplexVariant::mod4(20),
                                             TriplexVariant::mod10of12(5), TriplexVariant::mod2of12(6)};
    for (const auto& v : variants) {
        const auto bn = build_cyclic(order_of(v));
        auto sq = bn;
        for (const auto& t : build_trades(v)) {
            CHECK(t.removed().size() == t.mate().size());
            CHECK(trade_defect(t.removed(), t.mate()) == "");
            const auto once = apply_trade(sq, t);
            CHECK(apply_trade(once, t.reversed()) == sq);
            sq = once;
        }
        // Mod4 applies both trades only in L_3.
        const auto* t4 = std::get_if<TriplexVariant>(&v);
        if (t4 && t4->family == TriplexFamily::Mod4)
            CHECK(sq == build_mod4_square(t4->n, 3));
        else
            CHECK(sq == build_modified_square(v));
    }
}

TEST_CASE("restrict_delta_nonzero")
{
    CHECK(restrict_delta_nonzero(build_cyclic(12), 1).empty());
    // Only m = 1 vanishes on the cyclic square: (1, 2, 3) has 1 - 0 - 0.
    CHECK(restrict_delta_nonzero(build_cyclic(12), 3).contains({1, 2, 3}));
    const auto lp = build_modified_square(KK2Params{3, 2});
    const auto nz = restrict_delta_nonzero(lp, 1);
    CHECK(nz.size() == 12);
    for (const auto& e : nz)
        CHECK((e.row == 0 || e.row == 2));
}

TEST_CASE("text formats round trip exactly")
{
    const auto sq = build_modified_square(TriplexVariant::mod4(8));
    const auto text = to_text(sq);
    CHECK(text.rfind("8\n", 0) == 0);
    CHECK(text.find(" \n") == std::string::npos);
    CHECK(to_text(parse_square(text)) == text);

    const auto plex = build_plex(TriplexVariant::mod4(8));
    const auto ptext = to_text(plex);
    CHECK(ptext.rfind("n=8\n", 0) == 0);
    CHECK(parse_entry_set(ptext) == plex);
    CHECK(to_text(parse_entry_set(ptext)) == ptext);

    const auto rect = LatinRectangle::prefix_of(sq, 3);
    CHECK(to_text(parse_rectangle(to_text(rect))) == to_text(rect));

    CHECK(code_of([] { (void)parse_square("2\n0 1\n"); }) == ErrorCode::BadDimension);
    CHECK(code_of([] { (void)parse_square("2\n0 1\n0 1\n"); }) == ErrorCode::ColumnRepeat);
    CHECK(code_of([] { (void)parse_entry_set("n=3\n0 0\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("sha256 and digest")
{
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(digest(build_cyclic(3)) == sha256_hex("3\n0 1 2\n1 2 0\n2 0 1\n"));
}
