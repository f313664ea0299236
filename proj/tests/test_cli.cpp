#include "hirzebruch/io.hpp"

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using hirz::io::Json;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = {})
{
    std::string cmd = env + (env.empty() ? "" : " ") + "\"" HIRZ_EXE "\" " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t k;
    while ((k = std::fread(buf, 1, sizeof buf, p)) > 0)
        r.out.append(buf, k);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

Json run_json(const std::string& args, int expect_status = 0, const std::string& env = {})
{
    auto r = run("--json --no-timings " + args, env);
    CHECK(r.status == expect_status);
    return Json::parse(r.out);
}

std::filesystem::path scratch()
{
    auto d = std::filesystem::temp_directory_path() / ("hirz_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
}

void write(const std::filesystem::path& p, const std::string& s)
{
    std::ofstream(p) << s;
}

const char* q_field = R"("field":{"name":"Q","min_poly":["0","1"],"embedding":[0,0],"involution":["0"]})";

} // namespace

TEST_CASE("catalog list and emit")
{
    auto list = run_json("catalog list");
    CHECK(list["schema"] == "hirz.catalog/1");
    CHECK(list["entries"].size() >= 9);
    int real = 0;
    for (const auto& e : list["entries"])
        real += e["real"].get<bool>() ? 1 : 0;
    CHECK(real == 5); // coxeter 2..5 and extended_ceva2, which is coxeter4 again

    auto hesse = run("catalog emit hesse");
    REQUIRE(hesse.status == 0);
    auto doc = Json::parse(hesse.out);
    CHECK(doc["lines"].size() == 12);
    CHECK(doc["field"]["min_poly"] == Json::array({"1", "1", "1"}));

    CHECK(run("catalog emit nosuch").status == 2);
    CHECK(run("catalog emit ceva:0").status == 2);
    CHECK(run("catalog emit ceva:6").status == 0);
}

TEST_CASE("check through a pipe")
{
    auto r = run("catalog emit coxeter5 | \"" HIRZ_EXE "\" --json --no-timings check -");
    CHECK(r.status == 0);
    auto j = Json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["hirzebruch"]["n"] == 5);
    CHECK(j["structural"]["pass"] == true);
    CHECK(j["lattice"]["t_profile"] == Json{{"2", 15}, {"3", 10}, {"5", 6}});
}

TEST_CASE("check failures and exit codes")
{
    auto dir = scratch();
    write(dir / "four.json", std::string("{") + q_field +
                                 R"(,"lines":[[["1"],["0"],["0"]],[["0"],["1"],["0"]],[["0"],["0"],["1"]],[["1"],["1"],["1"]]]})");
    auto j = run_json("check \"" + (dir / "four.json").string() + "\"", 1);
    CHECK(j["pass"] == false);
    CHECK(j["hirzebruch"]["reason"] == "line count not 3n");

    write(dir / "bad.json", std::string("{") + q_field + R"(,"lines":[[["1/0"],["0"],["0"]]]})");
    CHECK(run("check \"" + (dir / "bad.json").string() + "\"").status == 2);
    CHECK(run("check \"" + (dir / "missing.json").string() + "\"").status == 2);
    CHECK(run("check").status == 2);
    CHECK(run("frobnicate").status == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("precision budget exhaustion exits with 3")
{
    // x = z and x = (1 + eps) z meet y = 0 at points eps apart, where
    // eps = p - q sqrt2 for a Pell pair (p, q) is about 1.08e-23: ordering them
    // needs more than 64 bits of the generator but far less than the default budget
    const std::string doc =
        R"x({"field":{"name":"Q(sqrt2)","min_poly":["-2","0","1"],"embedding":[1.4142135623730951,0],)x"
        R"x("involution":["0","1"]},"lines":[[["1"],["0"],["0"]],[["0"],["1"],["0"]],[["0"],["0"],["1"]],)x"
        R"x([["1"],["0"],["-1"]],[["1"],["0"],["-46292552162781456490002","32733777552734744709300"]]]})x";
    auto dir = scratch();
    write(dir / "tiny.json", doc);
    const std::string f = "\"" + (dir / "tiny.json").string() + "\"";
    CHECK(run("check --max-bits 64 " + f).status == 3);
    CHECK(run("check " + f).status == 1); // decided; five lines fail the counting property
    std::filesystem::remove_all(dir);
}

TEST_CASE("metric on the (pi/2, pi/3, pi/3) arrangement")
{
    auto dir = scratch();
    auto f = (dir / "c3.json").string();
    CHECK(run("catalog emit coxeter3 -o \"" + f + "\"").status == 0);
    auto j = run_json("metric \"" + f + "\"");
    CHECK(j["pass"] == true);
    REQUIRE(j["face_types"].size() == 1);
    std::vector<std::string> deg;
    for (const auto& a : j["face_types"][0]["angles"])
        deg.push_back(a["deg"]);
    CHECK(deg == std::vector<std::string>{"90.000000", "45.000000", "45.000000"});
    auto k = run_json("metric --n 3 \"" + f + "\"", 1);
    CHECK(k["pass"] == false);
    std::filesystem::remove_all(dir);
}

TEST_CASE("consistency and polygon selftest")
{
    auto c = run_json("consistency --dmax 5 --nmax 100");
    std::vector<std::pair<int, int>> sol;
    for (const auto& s : c["solutions"])
        sol.emplace_back(s["d"], s["n"]);
    CHECK(sol == std::vector<std::pair<int, int>>{{3, 2}, {4, 3}, {5, 5}});

    auto p = run_json("polygon selftest --samples 100 --seed 42");
    CHECK(p["total_violations"] == 0);
    CHECK(p["pass"] == true);
}

TEST_CASE("tolerance from the environment")
{
    auto c = run_json("consistency", 0, "ARR_TOL=1e-6");
    CHECK(c["tolerance"] == 1e-6);
    auto d = run_json("consistency --tol 1e-7", 0, "ARR_TOL=1e-6");
    CHECK(d["tolerance"] == 1e-7);
    CHECK(run("consistency", "ARR_TOL=abc").status == 2);
    CHECK(run("consistency", "ARR_TOL=-1").status == 2);
}

TEST_CASE("search command")
{
    auto dir = scratch();
    auto cert = (dir / "cert.json").string();
    auto r = run("--json --no-timings search --n 3 --mode paper_pruned --certificate \"" + cert + "\"");
    CHECK(r.status == 0);
    std::ifstream in(cert);
    std::string file((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(file == r.out);
    auto j = Json::parse(r.out);
    CHECK(j["types_found"] == 1);
    CHECK(j["types"][0]["catalog_matches"] == Json::array({"coxeter4", "extended_ceva2"}));
    bool dual_hesse = false;
    for (const auto& p : j["profiles"])
        if (p["t_profile"] == Json{{"3", 12}})
            dual_hesse = p["status"] == "pruned";
    CHECK(dual_hesse);

    auto partial = run_json("search --n 3 --budget 2000", 3);
    CHECK(partial["budget_exhausted"] == true);
    CHECK(run("search --n 4").status == 2);
    CHECK(run("search --n 2 --mode nonsense").status == 2);
    std::filesystem::remove_all(dir);
}
