#include "doctest.h"

#include "plexforge/construct.hpp"
#include "plexforge/error.hpp"
#include "plexforge/report.hpp"

using namespace plexforge;

namespace {

ErrorCode parse_code(const Json& j)
{
    try {
        (void)certificate_from_json(j);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("certificate accepted");
    return ErrorCode::BadParams;
}

} // namespace

TEST_CASE("certificate json has exactly the documented fields and round trips")
{
    const auto sq = build_modified_square(KK2Params{3, 2});
    for (int k : {1, 3}) {
        const auto cert = matching_certificate(sq, k, 1);
        const auto j = to_json(cert);
        std::vector<std::string> keys;
        for (const auto& [key, value] : j.items())
            keys.push_back(key);
        CHECK(keys == std::vector<std::string>{"method", "square_digest", "k", "m", "sum_lo", "sum_hi",
                                               "required_value", "required_modulus", "conclusion"});
        CHECK(j["method"] == "MatchingBound");
        CHECK(j["square_digest"] == digest(sq));
        const auto back = certificate_from_json(Json::parse(j.dump()));
        CHECK(to_json(back) == j);
        CHECK(verify_certificate(back, sq) == verify_certificate(cert, sq));
    }
    const auto bot = botrows_certificate(build_cyclic(8), 1, 1, 0);
    CHECK(certificate_from_json(to_json(bot)).method == CertificateMethod::BotRows);
}

TEST_CASE("malformed certificates are parse errors")
{
    const auto good = to_json(matching_certificate(build_cyclic(6), 1, 1));
    auto missing = good;
    missing.erase("sum_hi");
    CHECK(parse_code(missing) == ErrorCode::ParseError);
    auto extra = good;
    extra["note"] = "x";
    CHECK(parse_code(extra) == ErrorCode::ParseError);
    auto method = good;
    method["method"] = "Guess";
    CHECK(parse_code(method) == ErrorCode::ParseError);
    auto type = good;
    type["k"] = "three";
    CHECK(parse_code(type) == ErrorCode::ParseError);
    CHECK(parse_code(Json::array()) == ErrorCode::ParseError);
}

TEST_CASE("bounds and search outcomes")
{
    const auto b = to_json(extension_bound(8, 5));
    CHECK(b["exact_form"] == "8!^3 * 3!^8 / 8^24");
    CHECK(b["numerator"] == "205069795875");
    CHECK(b["denominator"] == "8796093022208");
    CHECK_FALSE(to_json(step_count_bound(1, 1)).contains("numerator"));

    const auto sq = build_cyclic(5);
    const auto found = count_transversals(sq);
    const auto j = to_json(found);
    CHECK(j["status"] == "Found");
    CHECK(j["count"] == 15);
    CHECK(j["complete"] == true);
    CHECK(j["witness"].size() == 5);
    CHECK(j["witness"][0] == "0 0 0");
    CHECK_FALSE(to_json(found, false).contains("witness"));

    const auto none = to_json(find_plex(build_cyclic(4), 1));
    CHECK(none["status"] == "ExhaustedNone");
    CHECK(none["count"].is_null());
}

TEST_CASE("species report and envelope")
{
    const auto classes = classify({build_cyclic(4), relabel(build_cyclic(4), {1, 0, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3})});
    const auto r = species_report(classes);
    REQUIRE(r.size() == 1);
    CHECK(r[0]["class_size"] == 2);
    CHECK(r[0]["transversal_count"] == 0);
    CHECK(r[0]["key_hex"].get<std::string>().size() == 34);

    const auto env = command_report("bounds", Json{{"n", 8}}, Json{{"ok", true}}, 3);
    std::vector<std::string> keys;
    for (const auto& [key, value] : env.items())
        keys.push_back(key);
    CHECK(keys == std::vector<std::string>{"command", "parameters", "result", "elapsed_ms"});
}
