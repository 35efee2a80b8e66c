#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "plexforge/analyze.hpp"
#include "plexforge/bounds.hpp"
#include "plexforge/search.hpp"
#include "plexforge/species.hpp"

namespace plexforge {

using Json = nlohmann::ordered_json;

/// Fields: method, square_digest, k, m, sum_lo, sum_hi, required_value,
/// required_modulus, conclusion.
Json to_json(const Certificate& cert);
/// Inverse of to_json; throws ParseError on missing or unknown fields.
Certificate certificate_from_json(const Json& j);

Json to_json(const LogBound& bound);

/// The witness, when present, is written as "r c s" strings.
Json to_json(const SearchOutcome& outcome, bool with_witness = true);

/// One object per class: key_hex, class_size, representative (square
/// text), transversal_count.
Json species_report(const std::vector<SpeciesClass>& classes);

/// The envelope every command prints: command, parameters, result,
/// elapsed_ms.
Json command_report(const std::string& command, Json parameters, Json result, long long elapsed_ms);

} // namespace plexforge
