#pragma once

#include "hirzebruch/io.hpp"
#include "hirzebruch/search.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace hirz::report {

using Json = io::Json;

/// A machine-readable report. `body` holds everything but the schema id,
/// the command echo and the timings, which the front end adds.
struct Report {
    std::string schema;
    Json body;
    bool pass = true;
};

/// {"rad": x, "deg": "d.dddddd"}
Json angle(double radians);

Report check(const Arrangement& arr, int max_bits = default_bit_budget);
Report catalog_list();
Report metric(const Arrangement& arr, std::optional<int> n_override, double tol);
Report polygon_selftest(int samples, std::uint64_t seed, double tol);
Report consistency(int d_min, int d_max, int n_max, double tol);

/// The search certificate. Catalog entries whose incidence structure matches
/// a found type are listed with it.
Report search_certificate(const search::SearchResult& result);

/// schema, command, body fields, then timings when given.
Json assemble(const Report& r, const Json& command, std::optional<double> wall_seconds);

} // namespace hirz::report
