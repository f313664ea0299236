#pragma once

#include "hirzebruch/arrangement.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace hirz::io {

using Json = nlohmann::ordered_json;

/// Arrangement file:
///   {"field": {"name", "min_poly": [...], "embedding": [re, im], "radius"?, "involution": [...]},
///    "lines": [[c0, c1, c2], ...]}
/// where polynomials and coordinates are coefficient vectors of rational
/// strings, lowest degree first. Throws InputError on malformed input.
Arrangement parse_arrangement(const Json& doc);
Arrangement parse_arrangement_text(std::string_view text);

Json emit_arrangement(const Arrangement& arr);

Json emit_field(const NumberField& field);
Json emit_element(const FieldElement& x);
Json emit_profile(const TProfile& t);

} // namespace hirz::io
