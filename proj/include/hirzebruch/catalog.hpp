#pragma once

#include "hirzebruch/arrangement.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hirz::catalog {

/// The real reflection arrangement with triangle group (pi/2, pi/3, pi/d):
/// d = 2 gives three generic lines (the (pi/2, pi/2, pi/2) group), d = 3 the
/// triangle with three concurrent cevians, d = 4 the square arrangement with
/// the line at infinity, d = 5 the icosahedral 15-line arrangement over Q(sqrt 5).
Arrangement coxeter_real(int d);

/// (z0^m - z1^m)(z1^m - z2^m)(z2^m - z0^m) = 0 over Q(zeta_m), m >= 3.
Arrangement ceva(int m);

/// The Ceva arrangement together with the coordinate triangle, m >= 2.
Arrangement extended_ceva(int m);

/// The twelve lines through the nine inflection points of the Hesse pencil.
Arrangement hesse();

struct Entry {
    std::string name;
    int expected_n = 0;
    TProfile expected_t_profile;
    std::string field_description;
    bool expected_real = false;
    std::function<Arrangement()> build;
};

/// Every named entry, in listing order.
const std::vector<Entry>& entries();

/// Looks up `name` (also accepts "ceva:M" and "extended_ceva:M"). Throws
/// InputError for unknown names.
Entry find(const std::string& name);

} // namespace hirz::catalog
