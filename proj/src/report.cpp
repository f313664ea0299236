#include "hirzebruch/report.hpp"

#include "hirzebruch/catalog.hpp"
#include "hirzebruch/error.hpp"
#include "hirzebruch/flatmetric.hpp"
#include "hirzebruch/spherical.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

namespace hirz::report {

namespace {

Json triple(const std::array<int, 3>& t)
{
    return Json::array({t[0], t[1], t[2]});
}

Json face_types(const std::map<std::array<int, 3>, int>& types)
{
    Json out = Json::array();
    for (const auto& [t, c] : types)
        out.push_back({{"type", triple(t)}, {"count", c}});
    return out;
}

Json number_or_null(double v)
{
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

} // namespace

Json angle(double radians)
{
    if (!std::isfinite(radians))
        return {{"rad", nullptr}, {"deg", nullptr}};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", radians * 180 / std::numbers::pi);
    return {{"rad", radians}, {"deg", buf}};
}

Report check(const Arrangement& arr, int max_bits)
{
    Report r{"hirz.check/1", Json::object(), false};
    Json& b = r.body;
    b["input"] = {{"name", arr.name()},
                  {"lines", arr.size()},
                  {"field", arr.field()->name()},
                  {"field_degree", arr.field()->degree()},
                  {"irreducibility", to_string(arr.field()->irreducibility())},
                  {"real", arr.is_real()}};
    if (arr.size() < 2) {
        b["hirzebruch"] = {{"pass", false}, {"reason", "fewer than two lines"}};
        b["pass"] = false;
        return r;
    }
    auto lattice = intersection_lattice(arr);
    b["lattice"] = {{"points", lattice.points.size()}, {"t_profile", io::emit_profile(lattice.t_profile)}};
    auto hz = hirzebruch_check(lattice, arr.size());
    b["hirzebruch"] = {{"pass", hz.pass},
                       {"n", hz.n ? Json(*hz.n) : Json(nullptr)},
                       {"per_line_counts", hz.per_line_counts},
                       {"reason", hz.reason}};
    bool pass = hz.pass;
    if (hz.pass) {
        auto ci = counting_identities(lattice.t_profile, *hz.n);
        b["counting_identities"] = {{"sum_k_tk", ci.sum_k_tk},
                                    {"expected_sum_k_tk", ci.expected_sum_k_tk},
                                    {"pairs", ci.pairs},
                                    {"expected_pairs", ci.expected_pairs},
                                    {"pass", ci.sum_k_tk_ok && ci.pairs_ok}};
        pass = pass && ci.sum_k_tk_ok && ci.pairs_ok;
    }
    if (arr.is_real() && arr.field()->has_real_embedding()) {
        auto cx = cell_complex(arr, lattice, max_bits);
        b["cell_complex"] = {{"vertices", cx.vertex_count()},
                             {"edges", cx.edge_count()},
                             {"faces", cx.face_count()},
                             {"euler_characteristic", cx.euler_char()}};
        if (hz.pass) {
            auto sp = structural_predicates(arr, lattice, cx);
            b["structural"] = {{"n", sp.n},
                               {"simplicial", sp.simplicial},
                               {"no_adjacent_double_points", sp.no_adjacent_double_points},
                               {"max_multiplicity_le_5", sp.max_multiplicity_le_5},
                               {"star_alternation", sp.star_alternation},
                               {"face_types_allowed", sp.face_types_allowed},
                               {"no_edge_between_high", sp.no_edge_between_high},
                               {"few_high_neighbors", sp.few_high_neighbors},
                               {"face_types", face_types(sp.face_types)},
                               {"diagnostics", sp.diagnostics},
                               {"pass", sp.all_pass()}};
            pass = pass && sp.all_pass();
        }
    }
    b["pass"] = pass;
    r.pass = pass;
    return r;
}

Report catalog_list()
{
    Report r{"hirz.catalog/1", Json::object(), true};
    Json list = Json::array();
    for (const auto& e : catalog::entries())
        list.push_back({{"name", e.name},
                        {"lines", 3 * e.expected_n},
                        {"n", e.expected_n},
                        {"t_profile", io::emit_profile(e.expected_t_profile)},
                        {"field", e.field_description},
                        {"real", e.expected_real}});
    r.body["entries"] = std::move(list);
    return r;
}

Report metric(const Arrangement& arr, std::optional<int> n_override, double tol)
{
    auto m = flat::verify_metric(arr, n_override, tol);
    Report r{"hirz.metric/1", Json::object(), m.pass};
    Json& b = r.body;
    b["input"] = {{"name", arr.name()}, {"lines", arr.size()}};
    b["n"] = m.n;
    b["tolerance"] = tol;

    std::map<int, double> sector;
    for (const auto& f : m.faces)
        for (std::size_t i = 0; i < 3; ++i)
            if (f.multiplicities[i] > 0)
                sector.emplace(f.multiplicities[i], f.angles[i]);
    Json sectors = Json::array();
    for (auto [k, a] : sector)
        sectors.push_back({{"multiplicity", k}, {"angle", angle(a)}});
    b["sector_angles"] = std::move(sectors);

    Json types = Json::array();
    for (const auto& [t, c] : m.face_types) {
        std::vector<double> a;
        for (int k : t)
            a.push_back(sector.count(k) ? sector[k] : std::nan(""));
        std::sort(a.begin(), a.end(), std::greater<>());
        Json angles = Json::array();
        for (double x : a)
            angles.push_back(angle(x));
        types.push_back({{"type", triple(t)}, {"count", c}, {"angles", angles}});
    }
    b["face_types"] = std::move(types);

    struct Cone {
        int count = 0;
        double expected = 0;
        double deviation = 0;
    };
    std::map<int, Cone> cones;
    for (const auto& v : m.vertices) {
        auto& e = cones[v.multiplicity];
        ++e.count;
        e.expected = v.expected;
        e.deviation = std::max(e.deviation, std::abs(v.cone_angle - v.expected));
    }
    Json vs = Json::array();
    for (const auto& [k, e] : cones)
        vs.push_back({{"multiplicity", k},
                      {"count", e.count},
                      {"cone_angle", angle(e.expected)},
                      {"max_deviation", number_or_null(e.deviation)}});
    b["vertices"] = std::move(vs);
    b["total_curvature"] = angle(m.total_curvature);
    b["face_angle_total"] = angle(m.face_angle_total);
    b["cone_angle_total"] = angle(m.cone_angle_total);
    b["angle_sums_ok"] = m.angle_sums_ok;
    b["isometric"] = m.isometric;
    b["cone_angles_ok"] = m.cone_angles_ok;
    b["curvature_ok"] = m.curvature_ok;
    b["diagnostics"] = m.diagnostics;
    b["pass"] = m.pass;
    return r;
}

Report polygon_selftest(int samples, std::uint64_t seed, double tol)
{
    auto s = spherical::selftest(samples, seed, tol);
    Report r{"hirz.polygon-selftest/1", Json::object(), false};
    Json& b = r.body;
    b["samples"] = samples;
    b["seed"] = seed;
    b["tolerance"] = tol;
    Json st = Json::array();
    for (const auto& x : s.statements)
        st.push_back({{"name", x.name},
                      {"samples", x.samples},
                      {"vacuous", x.vacuous},
                      {"violations", x.violations},
                      {"worst_margin", number_or_null(x.worst_margin)}});
    b["statements"] = std::move(st);
    b["max_dual_residual"] = s.max_dual_residual;
    b["max_gauss_bonnet_residual"] = s.max_gauss_bonnet_residual;
    b["flatten_nonconvex"] = s.flatten_nonconvex;
    b["total_violations"] = s.total_violations();
    r.pass = s.total_violations() == 0 && s.max_dual_residual < tol && s.max_gauss_bonnet_residual < tol;
    b["pass"] = r.pass;
    return r;
}

Report consistency(int d_min, int d_max, int n_max, double tol)
{
    auto c = flat::solve_consistency(d_min, d_max, n_max, tol);
    Report r{"hirz.consistency/1", Json::object(), false};
    Json& b = r.body;
    b["d_min"] = d_min;
    b["d_max"] = d_max;
    b["n_max"] = n_max;
    b["tolerance"] = tol;
    Json sol = Json::array();
    for (const auto& cell : c.cells) {
        if (!cell.solution)
            continue;
        sol.push_back({{"d", cell.d},
                       {"n", cell.n},
                       {"residual", cell.residual},
                       {"identity_residual", cell.identity_residual}});
    }
    b["solutions"] = std::move(sol);
    int admissible = 0;
    for (const auto& cell : c.cells)
        admissible += cell.admissible ? 1 : 0;
    b["cells"] = c.cells.size();
    b["admissible_cells"] = admissible;
    b["max_solution_residual"] = c.max_solution_residual;
    b["min_nonsolution_residual"] = number_or_null(c.min_nonsolution_residual);
    b["max_identity_residual"] = c.max_identity_residual;
    r.pass = c.max_solution_residual < tol && c.max_identity_residual < tol;
    b["pass"] = r.pass;
    return r;
}

Report search_certificate(const search::SearchResult& res)
{
    Report r{"hirz.search-certificate/1", Json::object(), !res.budget_exhausted};
    Json& b = r.body;
    b["n"] = res.n;
    b["lines"] = 3 * res.n;
    b["mode"] = search::to_string(res.mode);
    b["max_multiplicity"] = res.k_max;
    b["scope"] = res.mode == search::Mode::paper_pruned && res.n >= 2
                     ? "straight-line realizable types only; the structural pruning rules do not hold for "
                       "abstract pseudoline arrangements"
                     : "all pseudoline wiring diagrams with the counting property";
    b["nodes"] = res.nodes;
    b["completed_diagrams"] = res.completions;
    b["budget_exhausted"] = res.budget_exhausted;
    b["complete"] = !res.budget_exhausted;
    b["seed_independent"] = true;

    std::vector<std::pair<std::string, search::CombinatorialType>> cat;
    for (const auto& e : catalog::entries())
        if (e.expected_n == res.n)
            cat.emplace_back(e.name, search::type_of(e.build()));

    Json types = Json::array();
    for (const auto& ft : res.types) {
        // decode the canonical labeling: L, P, point line lists, per-line orders
        const auto& c = ft.canonical;
        std::size_t pos = 2;
        const int L = c[0], P = c[1];
        Json points = Json::array(), orders = Json::array();
        for (int p = 0; p < P; ++p) {
            Json pl = Json::array();
            for (; c[pos] != -1; ++pos)
                pl.push_back(c[pos]);
            ++pos;
            points.push_back(std::move(pl));
        }
        for (int l = 0; l < L; ++l) {
            Json seq = Json::array();
            for (; c[pos] != -1; ++pos)
                seq.push_back(c[pos]);
            ++pos;
            orders.push_back(std::move(seq));
        }
        Json matches = Json::array();
        bool real_match = false;
        for (const auto& [name, t] : cat) {
            if (t.points.size() == ft.type.points.size() &&
                search::canonical_form(t, false) == ft.incidence_canonical) {
                matches.push_back(name);
                real_match = real_match || catalog::find(name).expected_real;
            }
        }
        types.push_back({{"t_profile", io::emit_profile(ft.type.t_profile())},
                         {"points", std::move(points)},
                         {"line_orders", std::move(orders)},
                         {"catalog_matches", std::move(matches)},
                         {"realizability", real_match ? "realized by a real catalog arrangement"
                                                      : "combinatorial, realizability unknown"}});
    }
    b["types_found"] = res.types.size();
    b["types"] = std::move(types);

    Json profiles = Json::array();
    for (const auto& p : res.profiles)
        profiles.push_back(
            {{"t_profile", io::emit_profile(p.profile)}, {"types_found", p.types_found}, {"status", p.status}});
    b["profiles"] = std::move(profiles);
    return r;
}

Json assemble(const Report& r, const Json& command, std::optional<double> wall_seconds)
{
    Json out;
    out["schema"] = r.schema;
    out["command"] = command;
    for (auto it = r.body.begin(); it != r.body.end(); ++it)
        out[it.key()] = it.value();
    if (wall_seconds)
        out["timings"] = {{"wall_seconds", *wall_seconds}};
    return out;
}

} // namespace hirz::report
