#include "plexforge/report.hpp"

#include <set>

#include "plexforge/error.hpp"

namespace plexforge {

Json to_json(const Certificate& cert)
{
    Json j;
    j["method"] = to_string(cert.method);
    j["square_digest"] = cert.square_digest;
    j["k"] = cert.k;
    j["m"] = cert.m;
    j["sum_lo"] = cert.sum_lo;
    j["sum_hi"] = cert.sum_hi;
    j["required_value"] = cert.required.value;
    j["required_modulus"] = cert.required.modulus;
    j["conclusion"] = to_string(cert.conclusion);
    return j;
}

Certificate certificate_from_json(const Json& j)
{
    static const std::set<std::string> fields{"method", "square_digest", "k", "m", "sum_lo", "sum_hi",
                                              "required_value", "required_modulus", "conclusion"};
    if (!j.is_object())
        throw Error(ErrorCode::ParseError, "certificate json is not an object");
    for (const auto& [key, value] : j.items())
        if (!fields.count(key))
            throw Error(ErrorCode::ParseError, "unknown certificate field " + key);
    try {
        Certificate cert;
        const auto method = j.at("method").get<std::string>();
        if (method == "StepType")
            cert.method = CertificateMethod::StepType;
        else if (method == "BotRows")
            cert.method = CertificateMethod::BotRows;
        else if (method == "MatchingBound")
            cert.method = CertificateMethod::MatchingBound;
        else
            throw Error(ErrorCode::ParseError, "unknown certificate method " + method);
        cert.square_digest = j.at("square_digest").get<std::string>();
        cert.k = j.at("k").get<int>();
        cert.m = j.at("m").get<int>();
        cert.sum_lo = j.at("sum_lo").get<long long>();
        cert.sum_hi = j.at("sum_hi").get<long long>();
        cert.required.value = j.at("required_value").get<long long>();
        cert.required.modulus = j.at("required_modulus").get<long long>();
        const auto conclusion = j.at("conclusion").get<std::string>();
        if (conclusion == "Excluded")
            cert.conclusion = Conclusion::Excluded;
        else if (conclusion == "Inconclusive")
            cert.conclusion = Conclusion::Inconclusive;
        else
            throw Error(ErrorCode::ParseError, "unknown conclusion " + conclusion);
        return cert;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("certificate json: ") + e.what());
    }
}

Json to_json(const LogBound& bound)
{
    Json j;
    j["exact_form"] = bound.exact_form;
    j["log10"] = bound.log10_value;
    if (bound.exact_value) {
        j["numerator"] = boost::multiprecision::numerator(*bound.exact_value).str();
        j["denominator"] = boost::multiprecision::denominator(*bound.exact_value).str();
    }
    return j;
}

Json to_json(const SearchOutcome& outcome, bool with_witness)
{
    Json j;
    j["status"] = to_string(outcome.status);
    j["count"] = outcome.count ? Json(*outcome.count) : Json(nullptr);
    j["nodes"] = outcome.nodes;
    j["complete"] = outcome.complete;
    if (with_witness && outcome.witness) {
        Json cells = Json::array();
        for (const auto& e : *outcome.witness)
            cells.push_back(std::to_string(e.row) + " " + std::to_string(e.col) + " " + std::to_string(e.sym));
        j["witness"] = cells;
    }
    return j;
}

Json species_report(const std::vector<SpeciesClass>& classes)
{
    Json out = Json::array();
    for (const auto& c : classes) {
        Json j;
        j["key_hex"] = c.key.hex();
        j["class_size"] = c.members.size();
        j["representative"] = to_text(c.representative);
        j["transversal_count"] = count_transversals(c.representative).count.value_or(0);
        out.push_back(j);
    }
    return out;
}

Json command_report(const std::string& command, Json parameters, Json result, long long elapsed_ms)
{
    Json j;
    j["command"] = command;
    j["parameters"] = std::move(parameters);
    j["result"] = std::move(result);
    j["elapsed_ms"] = elapsed_ms;
    return j;
}

} // namespace plexforge
