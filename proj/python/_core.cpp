#include "hirzebruch/catalog.hpp"
#include "hirzebruch/error.hpp"
#include "hirzebruch/flatmetric.hpp"
#include "hirzebruch/io.hpp"
#include "hirzebruch/report.hpp"
#include "hirzebruch/search.hpp"
#include "hirzebruch/spherical.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hirz;

namespace {

std::string body(const report::Report& r)
{
    report::Json out;
    out["schema"] = r.schema;
    for (auto it = r.body.begin(); it != r.body.end(); ++it)
        out[it.key()] = it.value();
    return out.dump();
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact and numeric checks for Hirzebruch line arrangements";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
    py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);
    py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ArithmeticError);

    m.def("catalog_names", [] {
        std::vector<std::string> out;
        for (const auto& e : catalog::entries())
            out.push_back(e.name);
        return out;
    });
    m.def("catalog_emit", [](const std::string& name) { return io::emit_arrangement(catalog::find(name).build()).dump(); },
          py::arg("name"), "Arrangement file text of a catalog entry");

    m.def("check", [](const std::string& text, int max_bits) {
        return body(report::check(io::parse_arrangement_text(text), max_bits));
    }, py::arg("arrangement"), py::arg("max_bits") = default_bit_budget);
    m.def("metric", [](const std::string& text, std::optional<int> n, double tol) {
        return body(report::metric(io::parse_arrangement_text(text), n, tol));
    }, py::arg("arrangement"), py::arg("n") = py::none(), py::arg("tol") = spherical::default_tol);
    m.def("polygon_selftest", [](int samples, std::uint64_t seed, double tol) {
        py::gil_scoped_release release;
        return body(report::polygon_selftest(samples, seed, tol));
    }, py::arg("samples") = 1000, py::arg("seed") = 42, py::arg("tol") = spherical::default_tol);
    m.def("consistency", [](int d_min, int d_max, int n_max, double tol) {
        return body(report::consistency(d_min, d_max, n_max, tol));
    }, py::arg("d_min") = 3, py::arg("d_max") = 5, py::arg("n_max") = 100, py::arg("tol") = spherical::default_tol);
    m.def("search", [](int n, const std::string& mode, int jobs, std::optional<std::uint64_t> budget) {
        auto md = search::parse_mode(mode);
        py::gil_scoped_release release;
        return body(report::search_certificate(search::enumerate_types(n, md, {jobs, budget})));
    }, py::arg("n"), py::arg("mode") = "counting_only", py::arg("jobs") = 1, py::arg("budget") = py::none());

    m.def("t_profile_solver", &search::t_profile_solver, py::arg("n"), py::arg("k_max") = 5);
    m.def("sector_angle", &flat::sector_angle, py::arg("k"), py::arg("n"));
    m.def("regular_edge", &spherical::regular_edge, py::arg("k"), py::arg("beta"));
    m.def("parity_bound", &spherical::parity_bound, py::arg("v"));
}
