#include "hirzebruch/catalog.hpp"
#include "hirzebruch/search.hpp"

#include <doctest.h>

#include <set>

using namespace hirz;
using namespace hirz::search;

namespace {

// Independent brute-force scan of the two counting identities.
std::set<TProfile> brute_profiles(int n, int k_max)
{
    const int slots = 3 * n * (n + 1), pairs = 3 * n * (3 * n - 1) / 2;
    std::set<TProfile> out;
    for (int t2 = 0; t2 <= pairs; ++t2)
        for (int t3 = 0; 3 * t3 <= slots; ++t3)
            for (int t4 = 0; k_max >= 4 && 4 * t4 <= slots; ++t4)
                for (int t5 = 0; k_max >= 5 && 5 * t5 <= slots; ++t5) {
                    if (2 * t2 + 3 * t3 + 4 * t4 + 5 * t5 != slots || t2 + 3 * t3 + 6 * t4 + 10 * t5 != pairs)
                        continue;
                    TProfile t;
                    for (auto [k, v] : {std::pair{2, t2}, {3, t3}, {4, t4}, {5, t5}})
                        if (v)
                            t[k] = v;
                    out.insert(t);
                }
    return out;
}

std::set<std::vector<int>> canon_set(const SearchResult& r)
{
    std::set<std::vector<int>> s;
    for (const auto& t : r.types)
        s.insert(t.canonical);
    return s;
}

} // namespace

TEST_CASE("t-profile solver agrees with a brute-force scan")
{
    for (int n = 1; n <= 5; ++n) {
        auto sol = t_profile_solver(n, 5);
        CHECK(std::set<TProfile>(sol.begin(), sol.end()) == brute_profiles(n, 5));
    }
    auto one = t_profile_solver(1, 5);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == TProfile{{2, 3}});
    auto two = t_profile_solver(2, 5);
    CHECK(std::find(two.begin(), two.end(), TProfile{{2, 3}, {3, 4}}) != two.end());
    auto three = t_profile_solver(3, 5);
    CHECK(std::find(three.begin(), three.end(), TProfile{{2, 6}, {3, 4}, {4, 3}}) != three.end());
    CHECK(std::find(three.begin(), three.end(), TProfile{{3, 12}}) != three.end());
}

TEST_CASE("canonical forms are relabeling invariant")
{
    auto t = type_of(catalog::coxeter_real(4));
    REQUIRE(t.has_orders());
    CombinatorialType u = t;
    // reverse the line labels and the point list
    const int N = t.line_count;
    for (auto& p : u.points) {
        for (int& l : p)
            l = N - 1 - l;
        std::sort(p.begin(), p.end());
    }
    std::reverse(u.points.begin(), u.points.end());
    const int P = static_cast<int>(t.points.size());
    u.line_orders.assign(static_cast<std::size_t>(N), {});
    for (int l = 0; l < N; ++l)
        for (int p : t.line_orders[static_cast<std::size_t>(l)])
            u.line_orders[static_cast<std::size_t>(N - 1 - l)].push_back(P - 1 - p);
    CHECK(canonical_form(t, true) == canonical_form(u, true));
    CHECK(canonical_form(t, false) == canonical_form(u, false));
}

TEST_CASE("iso_match on catalog lattices")
{
    auto c4 = type_of(catalog::coxeter_real(4));
    CHECK(iso_match(c4, catalog::extended_ceva(2)));
    CHECK_FALSE(iso_match(c4, catalog::coxeter_real(3)));
    CHECK_FALSE(iso_match(c4, catalog::hesse()));
    auto c3 = type_of(catalog::coxeter_real(3));
    CHECK(iso_match(c3, catalog::coxeter_real(3)));
    CHECK_FALSE(iso_match(c3, catalog::coxeter_real(4)));
}

TEST_CASE("n = 1 has one type")
{
    for (Mode m : {Mode::counting_only, Mode::paper_pruned}) {
        auto r = enumerate_types(1, m);
        REQUIRE(r.types.size() == 1);
        CHECK(r.types[0].type.t_profile() == TProfile{{2, 3}});
        CHECK(iso_match(r.types[0].type, catalog::coxeter_real(2)));
        CHECK_FALSE(r.budget_exhausted);
    }
}

TEST_CASE("n = 2 has one type, the (pi/2, pi/3, pi/3) arrangement")
{
    auto counting = enumerate_types(2, Mode::counting_only);
    auto pruned = enumerate_types(2, Mode::paper_pruned);
    REQUIRE(counting.types.size() == 1);
    CHECK(counting.types[0].type.t_profile() == TProfile{{2, 3}, {3, 4}});
    CHECK(iso_match(counting.types[0].type, catalog::coxeter_real(3)));
    CHECK_FALSE(iso_match(counting.types[0].type, catalog::coxeter_real(4)));
    CHECK(canon_set(counting) == canon_set(pruned));
    // the full form also agrees with the real arrangement's cyclic orders
    CHECK(counting.types[0].canonical == canonical_form(type_of(catalog::coxeter_real(3)), true));
}

TEST_CASE("every found type satisfies the counting property")
{
    auto r = enumerate_types(2, Mode::counting_only);
    for (const auto& ft : r.types) {
        std::vector<int> per_line(static_cast<std::size_t>(ft.type.line_count), 0);
        std::set<std::pair<int, int>> covered;
        for (const auto& p : ft.type.points) {
            for (std::size_t a = 0; a < p.size(); ++a) {
                ++per_line[static_cast<std::size_t>(p[a])];
                for (std::size_t b = a + 1; b < p.size(); ++b)
                    CHECK(covered.insert({p[a], p[b]}).second);
            }
        }
        CHECK(covered.size() == 15);
        for (int c : per_line)
            CHECK(c == 3);
    }
}

TEST_CASE("n = 3 pruned search finds only the square arrangement")
{
    auto r1 = enumerate_types(3, Mode::paper_pruned);
    REQUIRE(r1.types.size() == 1);
    CHECK(iso_match(r1.types[0].type, catalog::coxeter_real(4)));
    CHECK(iso_match(r1.types[0].type, catalog::extended_ceva(2)));
    CHECK(r1.types[0].canonical == canonical_form(type_of(catalog::coxeter_real(4)), true));
    bool dual_hesse_reported = false;
    for (const auto& p : r1.profiles)
        if (p.profile == TProfile{{3, 12}})
            dual_hesse_reported = p.status == "pruned";
    CHECK(dual_hesse_reported);

    auto r4 = enumerate_types(3, Mode::paper_pruned, {4, std::nullopt});
    CHECK(canon_set(r1) == canon_set(r4));
    CHECK(r1.nodes == r4.nodes);
}

TEST_CASE("node budget flags a partial result")
{
    auto r = enumerate_types(3, Mode::counting_only, {1, 5000});
    CHECK(r.budget_exhausted);
    for (const auto& p : r.profiles)
        if (p.types_found == 0)
            CHECK(p.status == "unknown, budget exhausted");
}
