#include "hirzebruch/catalog.hpp"
#include "hirzebruch/error.hpp"
#include "hirzebruch/io.hpp"
#include "hirzebruch/report.hpp"
#include "hirzebruch/search.hpp"
#include "hirzebruch/spherical.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace hirz;
using report::Json;

namespace {

enum Exit { ok = 0, property_failure = 1, input_error = 2, budget_error = 3 };

struct Globals {
    bool json = false;
    bool no_timings = false;
    std::optional<double> tol;
    Json command = Json::array();
};

double tolerance(const Globals& g)
{
    if (g.tol)
        return *g.tol;
    if (const char* env = std::getenv("ARR_TOL")) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(env, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != std::string(env).size() || !(v > 0))
            throw InputError(std::string("ARR_TOL is not a positive number: '") + env + "'");
        return v;
    }
    return spherical::default_tol;
}

std::string read_input(const std::string& path)
{
    std::stringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << text;
}

std::string yes_no(bool b)
{
    return b ? "pass" : "FAIL";
}

void print_human(const report::Report& r)
{
    const Json& b = r.body;
    if (r.schema == "hirz.check/1") {
        std::cout << "arrangement: " << b["input"]["name"].get<std::string>() << ", " << b["input"]["lines"]
                  << " lines over " << b["input"]["field"].get<std::string>() << "\n";
        if (b.contains("lattice"))
            std::cout << "t-profile:   " << b["lattice"]["t_profile"].dump() << "\n";
        const Json& h = b["hirzebruch"];
        std::cout << "hirzebruch:  " << yes_no(h["pass"]);
        if (h["pass"].get<bool>())
            std::cout << " (n = " << h["n"] << ")";
        else
            std::cout << " (" << h["reason"].get<std::string>() << ")";
        std::cout << "\n";
        if (b.contains("counting_identities"))
            std::cout << "identities:  " << yes_no(b["counting_identities"]["pass"]) << "\n";
        if (b.contains("cell_complex"))
            std::cout << "cells:       V " << b["cell_complex"]["vertices"] << ", E " << b["cell_complex"]["edges"]
                      << ", F " << b["cell_complex"]["faces"] << "\n";
        if (b.contains("structural"))
            std::cout << "structural:  " << yes_no(b["structural"]["pass"]) << "\n";
    } else if (r.schema == "hirz.catalog/1") {
        for (const auto& e : b["entries"])
            std::cout << e["name"].get<std::string>() << "  lines " << e["lines"] << "  "
                      << e["field"].get<std::string>() << (e["real"].get<bool>() ? "  real" : "") << "\n";
    } else if (r.schema == "hirz.metric/1") {
        std::cout << "n = " << b["n"] << "\n";
        for (const auto& t : b["face_types"]) {
            std::cout << "face " << t["type"].dump() << " x" << t["count"] << ":";
            for (const auto& a : t["angles"])
                std::cout << " " << (a["deg"].is_null() ? "nan" : a["deg"].get<std::string>());
            std::cout << "\n";
        }
        std::cout << "total curvature " << b["total_curvature"]["rad"] << "\n";
        std::cout << "angle sums " << yes_no(b["angle_sums_ok"]) << ", isometric " << yes_no(b["isometric"])
                  << ", cone angles " << yes_no(b["cone_angles_ok"]) << ", curvature " << yes_no(b["curvature_ok"])
                  << "\n";
        for (const auto& d : b["diagnostics"])
            std::cout << "  " << d.get<std::string>() << "\n";
    } else if (r.schema == "hirz.polygon-selftest/1") {
        for (const auto& s : b["statements"])
            std::cout << s["name"].get<std::string>() << ": " << s["samples"] << " samples, " << s["violations"]
                      << " violations\n";
        std::cout << "dual residual " << b["max_dual_residual"] << ", Gauss-Bonnet residual "
                  << b["max_gauss_bonnet_residual"] << "\n";
    } else if (r.schema == "hirz.consistency/1") {
        for (const auto& s : b["solutions"])
            std::cout << "(d, n) = (" << s["d"] << ", " << s["n"] << ")  residual " << s["residual"] << "\n";
    } else if (r.schema == "hirz.search-certificate/1") {
        std::cout << "n = " << b["n"] << ", mode " << b["mode"].get<std::string>() << ", nodes " << b["nodes"]
                  << (b["budget_exhausted"].get<bool>() ? " (budget exhausted, partial)" : "") << "\n";
        for (const auto& t : b["types"])
            std::cout << "type " << t["t_profile"].dump() << " matches " << t["catalog_matches"].dump() << "\n";
        for (const auto& p : b["profiles"])
            std::cout << "profile " << p["t_profile"].dump() << ": " << p["status"].get<std::string>() << "\n";
    }
    std::cout << (r.pass ? "PASS" : "FAIL") << "\n";
}

int emit(const Globals& g, const report::Report& r, std::optional<double> seconds)
{
    if (g.json)
        std::cout << report::assemble(r, g.command, g.no_timings ? std::nullopt : seconds).dump(2) << "\n";
    else
        print_human(r);
    return r.pass ? ok : property_failure;
}

template <class F>
std::pair<report::Report, double> timed(F&& f)
{
    auto t0 = std::chrono::steady_clock::now();
    report::Report r = f();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(r), s};
}

} // namespace

int main(int argc, char** argv)
{
    Globals g;
    for (int i = 1; i < argc; ++i)
        g.command.push_back(argv[i]);

    CLI::App app{"Exact and numeric checks for Hirzebruch line arrangements"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", g.json, "Print the JSON report");
    app.add_flag("--no-timings", g.no_timings, "Leave timings out of JSON reports");
    app.add_option("--tol", g.tol, "Numeric tolerance (default $ARR_TOL or 1e-9)")->check(CLI::PositiveNumber);

    std::function<int()> action;

    auto* check = app.add_subcommand("check", "Lattice, counting property and structural predicates");
    std::string check_file;
    int max_bits = default_bit_budget;
    check->add_option("file", check_file, "Arrangement file, - for stdin")->required();
    check->add_option("--max-bits", max_bits, "Precision budget for sign decisions")->check(CLI::Range(64, 1 << 20));
    check->callback([&] {
        action = [&] {
            auto arr = io::parse_arrangement_text(read_input(check_file));
            auto [r, s] = timed([&] { return report::check(arr, max_bits); });
            return emit(g, r, s);
        };
    });

    auto* cat = app.add_subcommand("catalog", "Named arrangements");
    cat->require_subcommand(1);
    auto* cat_list = cat->add_subcommand("list", "List catalog entries");
    cat_list->callback([&] {
        action = [&] { return emit(g, report::catalog_list(), std::nullopt); };
    });
    auto* cat_emit = cat->add_subcommand("emit", "Write an entry as an arrangement file");
    std::string emit_name, emit_out;
    cat_emit->add_option("name", emit_name, "Entry name, or ceva:M / extended_ceva:M")->required();
    cat_emit->add_option("-o,--output", emit_out, "Output file (default stdout)");
    cat_emit->callback([&] {
        action = [&] {
            auto entry = catalog::find(emit_name);
            auto arr = entry.build();
            auto hz = hirzebruch_check(arr);
            if (!hz.pass || hz.n != entry.expected_n) {
                std::cerr << "self-check failed for " << emit_name << "\n";
                return int(property_failure);
            }
            std::string text = io::emit_arrangement(arr).dump(2) + "\n";
            if (emit_out.empty()) {
                std::cout << text;
                return int(ok);
            }
            write_file(emit_out, text);
            report::Report r{"hirz.catalog-emit/1",
                             {{"name", emit_name}, {"lines", arr.size()}, {"output", emit_out}, {"self_check", true}},
                             true};
            if (g.json)
                std::cout << report::assemble(r, g.command, std::nullopt).dump(2) << "\n";
            else
                std::cout << "wrote " << emit_out << " (" << arr.size() << " lines)\n";
            return int(ok);
        };
    });

    auto* met = app.add_subcommand("metric", "Flat metric from sector angles");
    std::string metric_file;
    std::optional<int> metric_n;
    met->add_option("file", metric_file, "Arrangement file, - for stdin")->required();
    met->add_option("--n", metric_n, "Override the arrangement's n")->check(CLI::PositiveNumber);
    met->callback([&] {
        action = [&] {
            auto arr = io::parse_arrangement_text(read_input(metric_file));
            double tol = tolerance(g);
            auto [r, s] = timed([&] { return report::metric(arr, metric_n, tol); });
            return emit(g, r, s);
        };
    });

    auto* poly = app.add_subcommand("polygon", "Spherical polygon inequalities");
    poly->require_subcommand(1);
    auto* selftest = poly->add_subcommand("selftest", "Seeded property campaign");
    int samples = 1000;
    std::uint64_t seed = 42;
    selftest->add_option("--samples", samples, "Samples per statement")->check(CLI::Range(1, 10000000));
    selftest->add_option("--seed", seed, "Seed");
    selftest->callback([&] {
        action = [&] {
            double tol = tolerance(g);
            auto [r, s] = timed([&] { return report::polygon_selftest(samples, seed, tol); });
            return emit(g, r, s);
        };
    });

    auto* srch = app.add_subcommand("search", "Enumerate combinatorial types with the counting property");
    int search_n = 0, jobs = 1;
    std::string mode = "counting_only", certificate;
    std::optional<std::uint64_t> budget;
    bool long_run = false;
    srch->add_option("--n", search_n, "n (3n lines)")->required()->check(CLI::Range(1, 5));
    srch->add_option("--mode", mode, "counting_only or paper_pruned")
        ->check(CLI::IsMember({"counting_only", "paper_pruned"}));
    srch->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 1024));
    srch->add_option("--budget", budget, "Node budget");
    srch->add_option("--certificate", certificate, "Write the certificate JSON here");
    srch->add_flag("--long", long_run, "Allow n >= 4");
    srch->callback([&] {
        action = [&] {
            if (search_n >= 4 && !long_run)
                throw InputError("n >= 4 runs long; pass --long");
            search::SearchOptions opt{jobs, budget};
            auto [r, s] = timed([&] {
                return report::search_certificate(search::enumerate_types(search_n, search::parse_mode(mode), opt));
            });
            std::optional<double> secs = g.no_timings ? std::nullopt : std::optional<double>(s);
            if (!certificate.empty())
                write_file(certificate, report::assemble(r, g.command, secs).dump(2) + "\n");
            int rc = emit(g, r, s);
            return r.body["budget_exhausted"].get<bool>() ? int(budget_error) : rc;
        };
    });

    auto* cons = app.add_subcommand("consistency", "Flat triangles (pi/2, alpha(3), alpha(d))");
    int d_min = 3, d_max = 5, n_max = 100;
    cons->add_option("--dmin", d_min, "Smallest d")->check(CLI::Range(3, 1000));
    cons->add_option("--dmax", d_max, "Largest d")->check(CLI::Range(3, 1000));
    cons->add_option("--nmax", n_max, "Largest n")->check(CLI::Range(2, 100000));
    cons->callback([&] {
        action = [&] {
            if (d_min > d_max)
                throw InputError("--dmin exceeds --dmax");
            double tol = tolerance(g);
            auto [r, s] = timed([&] { return report::consistency(d_min, d_max, n_max, tol); });
            return emit(g, r, s);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : input_error;
    }

    try {
        return action ? action() : int(input_error);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const DomainError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const PrecisionError& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return budget_error;
    } catch (const DegenerateError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return budget_error;
    }
}
