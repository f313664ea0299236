#include "hirzebruch/error.hpp"
#include "hirzebruch/spherical.hpp"

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

using namespace hirz::spherical;
using hirz::DomainError;
using hirz::InputError;

namespace {

constexpr double pi = std::numbers::pi;

SphericalPolygon octant()
{
    return SphericalPolygon::from_vertices({Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()});
}

EuclideanPolygon regular_plane(int v)
{
    EuclideanPolygon p;
    for (int i = 0; i < v; ++i)
        p.vertices.emplace_back(std::cos(2 * pi * i / v), std::sin(2 * pi * i / v));
    return p;
}

// Spherical law of cosines for the angle opposite side a.
double triangle_angle(double a, double b, double c)
{
    return std::acos((std::cos(a) - std::cos(b) * std::cos(c)) / (std::sin(b) * std::sin(c)));
}

} // namespace

TEST_CASE("octant triangle")
{
    auto m = measure(octant());
    for (int i = 0; i < 3; ++i) {
        CHECK(m.edge_lengths[static_cast<std::size_t>(i)] == doctest::Approx(pi / 2).epsilon(1e-12));
        CHECK(m.angles[static_cast<std::size_t>(i)] == doctest::Approx(pi / 2).epsilon(1e-12));
    }
    CHECK(m.area == doctest::Approx(pi / 2).epsilon(1e-12));
    auto d = measure(dual(octant()));
    for (double e : d.edge_lengths)
        CHECK(e == doctest::Approx(pi / 2).epsilon(1e-12));
    auto cs = double_polygon(octant());
    for (double t : cs.cone_angles)
        CHECK(t == doctest::Approx(pi).epsilon(1e-12));
    CHECK(std::abs(cs.gauss_bonnet_residual()) < 1e-12);
}

TEST_CASE("polygon validation")
{
    CHECK_THROWS_AS(SphericalPolygon::from_vertices({Vec3::UnitX(), Vec3::UnitZ(), Vec3::UnitY()}), InputError);
    CHECK_THROWS_AS(SphericalPolygon::from_vertices({Vec3::UnitX(), Vec3::UnitY()}), InputError);
    CHECK_THROWS_AS(SphericalPolygon::from_vertices({Vec3::UnitX(), Vec3::UnitY(), Vec3(2, 0, 0)}), InputError);
    // three points on the equator
    CHECK_THROWS_AS(SphericalPolygon::from_vertices(
                        {Vec3::UnitX(), Vec3(std::cos(1.0), std::sin(1.0), 0), Vec3(std::cos(2.0), std::sin(2.0), 0)}),
                    InputError);
}

TEST_CASE("bigon boundary case")
{
    auto b = regular_polygon(2, 1.0);
    CHECK(b.is_bigon());
    CHECK(edge_lengths(b) == std::vector<double>{pi, pi});
    CHECK_THROWS_AS(measure(b), DomainError);
    auto cs = double_polygon(b);
    CHECK(cs.cone_angles == std::vector<double>{2.0, 2.0});
    CHECK(std::abs(cs.gauss_bonnet_residual()) < 1e-12);
    CHECK(regular_edge(2, 2.5) == pi);
}

TEST_CASE("regular polygons")
{
    auto t = measure(regular_polygon(3, 2 * pi / 3));
    // equilateral triangle with angle 2 pi/3: cos s = cos A / (1 - cos A) with cos A = -1/2
    double s = std::acos(-1.0 / 3.0);
    for (double e : t.edge_lengths)
        CHECK(e == doctest::Approx(s).epsilon(1e-10));
    CHECK(t.edge_lengths[0] == doctest::Approx(1.9106).epsilon(1e-4));
    CHECK(t.area == doctest::Approx(pi).epsilon(1e-10));
    CHECK(t.edge_lengths[0] / 2 == doctest::Approx(std::acos(0.5 / std::sin(pi / 3))).epsilon(1e-10));
    CHECK(t.edge_lengths[0] / 2 == doctest::Approx(0.955317).epsilon(1e-6));

    auto o = measure(regular_polygon(3, pi / 2));
    CHECK(o.edge_lengths[0] == doctest::Approx(pi / 2).epsilon(1e-10));

    for (int k = 3; k <= 9; ++k) {
        double lo = (k - 2) * pi / k;
        for (double f : {0.1, 0.5, 0.9}) {
            double beta = lo + f * (pi - lo);
            auto m = measure(regular_polygon(k, beta));
            for (std::size_t i = 0; i < m.angles.size(); ++i) {
                CHECK(std::abs(m.angles[i] - beta) < 1e-9);
                CHECK(std::abs(m.edge_lengths[i] - m.edge_lengths[0]) < 1e-9);
            }
            // independent check: isosceles triangle centre-vertex-vertex
            double half = m.edge_lengths[0] / 2;
            CHECK(std::cos(half) * std::sin(beta / 2) == doctest::Approx(std::cos(pi / k)).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(regular_polygon(3, pi / 3), DomainError);
    CHECK_THROWS_AS(regular_polygon(4, pi), DomainError);
    CHECK_THROWS_AS(regular_polygon(1, 1.0), InputError);

    auto cs = double_polygon(regular_polygon(5, 4 * pi / 5));
    for (double c : cs.cone_angles)
        CHECK(c == doctest::Approx(8 * pi / 5).epsilon(1e-9));
    CHECK(std::abs(cs.gauss_bonnet_residual()) < 1e-9);
}

TEST_CASE("duality exchanges edges and angles")
{
    for (int i = 0; i < 200; ++i) {
        auto p = sample_convex_sphere(3 + i % 7, split_seed(11, static_cast<std::uint64_t>(i)));
        auto m = measure(p);
        auto d = measure(dual(p));
        const std::size_t v = m.angles.size();
        for (std::size_t j = 0; j < v; ++j) {
            CHECK(std::abs(d.edge_lengths[j] - (pi - m.angles[(j + 1) % v])) < 1e-9);
            CHECK(std::abs(d.angles[j] - (pi - m.edge_lengths[j])) < 1e-9);
        }
        CHECK(dual_involution_residual(p) < 1e-9);
        CHECK(std::abs(double_polygon(p).gauss_bonnet_residual()) < 1e-9);
        // area from the law of cosines on the fan from vertex 0
        double area = 0;
        for (int k = 1; k + 1 < p.size(); ++k) {
            double a = angle_between(p.vertex(k), p.vertex(k + 1));
            double b = angle_between(p.vertex(0), p.vertex(k + 1));
            double c = angle_between(p.vertex(0), p.vertex(k));
            area += triangle_angle(a, b, c) + triangle_angle(b, c, a) + triangle_angle(c, a, b) - pi;
        }
        CHECK(std::abs(area - m.area) < 1e-8);
    }
    // equiangular with angle beta -> equilateral with edge pi - beta
    auto d = measure(dual(regular_polygon(6, 0.8 * pi)));
    for (double e : d.edge_lengths)
        CHECK(e == doctest::Approx(0.2 * pi).epsilon(1e-9));
}

TEST_CASE("flatten")
{
    auto r = flatten(octant());
    auto e = edge_lengths(r.polygon);
    auto a = angles(r.polygon);
    for (int i = 0; i < 3; ++i) {
        CHECK(e[static_cast<std::size_t>(i)] == doctest::Approx(pi / 2).epsilon(1e-12));
        CHECK(a[static_cast<std::size_t>(i)] == doctest::Approx(pi / 3).epsilon(1e-12));
        CHECK(r.angle_margins[static_cast<std::size_t>(i)] == doctest::Approx(pi / 6).epsilon(1e-12));
    }
    CHECK(r.convex);

    auto sq = flatten(regular_polygon(4, 2 * pi / 3));
    auto se = edge_lengths(sq.polygon);
    for (double x : se)
        CHECK(std::abs(x - se[0]) < 1e-9);
    for (double x : angles(sq.polygon))
        CHECK(x < 2 * pi / 3);
    CHECK(sq.convex);

    auto tiny = flatten(regular_polygon(5, 3 * pi / 5 + 1e-6));
    for (double m : tiny.angle_margins) {
        CHECK(m > 0);
        CHECK(m < 1e-5);
    }
    CHECK_THROWS_AS(flatten(regular_polygon(2, 1.0)), InputError);
}

TEST_CASE("consecutive edge and angle sums")
{
    auto r4 = check_consecutive_edges(regular_polygon(4, 2 * pi / 3));
    CHECK(r4.bound == doctest::Approx(pi));
    CHECK(r4.violations == 0);
    auto r3 = check_consecutive_edges(regular_polygon(3, 5 * pi / 6));
    CHECK(r3.bound == doctest::Approx(2 * pi - 2 * pi / 3).epsilon(1e-12));
    CHECK(r3.violations == 0);
    CHECK(2 * pi - parity_bound(5) == doctest::Approx(2 * pi - 2 * std::acos(0.25)).epsilon(1e-12));
    CHECK(2 * pi - parity_bound(5) == doctest::Approx(3.6469532).epsilon(1e-7));

    EuclideanPolygon square{{Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)}};
    auto s = check_consecutive_angles(square);
    for (double x : s.sums)
        CHECK(x == doctest::Approx(pi).epsilon(1e-12));
    CHECK(s.violations == 0);
    auto t = check_consecutive_angles(regular_plane(3));
    for (double x : t.sums)
        CHECK(x == doctest::Approx(2 * std::acos(0.5)).epsilon(1e-12));
    CHECK(t.violations == 0);

    for (int i = 0; i < 1000; ++i) {
        auto hex = sample_equilateral_sphere(6, split_seed(21, static_cast<std::uint64_t>(i)));
        auto r = check_consecutive_angles(hex);
        CHECK(r.violations == 0);
        for (double x : r.sums)
            CHECK(x > pi);
    }
    CHECK_THROWS_AS(check_consecutive_edges(sample_convex_sphere(6, 5)), InputError);
    CHECK_THROWS_AS(check_consecutive_angles(regular_polygon(2, 1.0)), InputError);
}

TEST_CASE("quadrilateral minimum")
{
    auto p = quadrilateral_min(1, 1, 1);
    CHECK(p.minimum == doctest::Approx(pi).epsilon(1e-9));
    CHECK(p.satisfied);
    auto odd = quadrilateral_min(2, 3, 1);
    CHECK(odd.bound == doctest::Approx(2 * std::acos(1.0 / 6)).epsilon(1e-12));
    CHECK(odd.satisfied);
    auto even = quadrilateral_min(1, 2, 2);
    CHECK(even.bound == doctest::Approx(pi));
    CHECK(even.satisfied);
    CHECK_THROWS_AS(quadrilateral_min(1, 1, 5), InputError);
    CHECK_THROWS_AS(quadrilateral_min(0, 1, 1), InputError);
}

TEST_CASE("pentagon refinement")
{
    auto r = pentagon_refinement(regular_polygon(5, 4 * pi / 5), PentagonForm::equiangular);
    CHECK(r.hypothesis);
    CHECK(r.conclusion);
    CHECK_FALSE(r.violated);
    auto small = pentagon_refinement(regular_polygon(5, 3 * pi / 5 + 0.01), PentagonForm::equiangular);
    CHECK(small.vacuous);
    CHECK_FALSE(small.violated);
    CHECK_THROWS_AS(pentagon_refinement(regular_polygon(4, 2.0), PentagonForm::equiangular), InputError);
}

TEST_CASE("regular rigidity")
{
    double b = 2 * pi / 3;
    CHECK(regular_edge(3, b) > regular_edge(4, b));
    CHECK(regular_edge(4, b) > regular_edge(5, b));
    for (int k = 3; k < 12; ++k)
        CHECK(regular_edge(k, 0.95 * pi) > regular_edge(k + 1, 0.95 * pi));
    auto scan = regular_rigidity_scan(50, 12);
    CHECK(scan.rows.size() == 500);
    CHECK(scan.violations == 0);
    for (const auto& row : scan.rows)
        CHECK(row.edges.front() == std::pair<int, double>{2, pi});
}

TEST_CASE("deformation descent")
{
    for (int v : {5, 6, 9}) {
        auto r = deformation_descent(regular_plane(v));
        CHECK(r.found);
        CHECK(r.directional_derivative < 0);
        // the direction keeps every edge length to first order
        auto p = regular_plane(v);
        for (int i = 0; i < v; ++i) {
            std::size_t a = static_cast<std::size_t>(i), b = static_cast<std::size_t>((i + 1) % v);
            Vec2 e = p.vertices[b] - p.vertices[a];
            Vec2 de = r.direction.segment<2>(static_cast<Eigen::Index>(2 * b)) -
                      r.direction.segment<2>(static_cast<Eigen::Index>(2 * a));
            CHECK(std::abs(e.dot(de)) < 1e-9);
        }
        // finite step decreases the angle sum
        EuclideanPolygon q = p;
        for (int i = 0; i < v; ++i)
            q.vertices[static_cast<std::size_t>(i)] += 1e-5 * r.direction.segment<2>(2 * i);
        auto a0 = angles(p), a1 = angles(q);
        CHECK(a1[0] + a1[1] < a0[0] + a0[1]);
    }
    CHECK_THROWS_AS(deformation_descent(regular_plane(4)), InputError);
}

TEST_CASE("equilateral samplers")
{
    auto tri = sample_equilateral_plane(3, 123);
    for (double a : angles(tri))
        CHECK(a == doctest::Approx(pi / 3).epsilon(1e-10));
    auto hex = sample_equilateral_sphere(6, 1);
    auto e = edge_lengths(hex);
    for (double x : e)
        CHECK(std::abs(x - e[0]) < 1e-9);
    auto rh = sample_equilateral_plane(4, 7);
    auto re = edge_lengths(rh);
    auto ra = angles(rh);
    for (double x : re)
        CHECK(x == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ra[0] == doctest::Approx(ra[2]).epsilon(1e-10));
    CHECK(ra[1] == doctest::Approx(ra[3]).epsilon(1e-10));
    // determinism
    CHECK(sample_equilateral_sphere(7, 99).vertices() == sample_equilateral_sphere(7, 99).vertices());
    CHECK_THROWS_AS(sample_equilateral_plane(2, 1), InputError);
}

TEST_CASE("property campaign")
{
    auto t0 = std::chrono::steady_clock::now();
    auto rep = selftest(1000, 2026, 1e-9);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& s : rep.statements) {
        CAPTURE(s.name);
        CHECK(s.samples >= 500);
        CHECK(s.violations == 0);
        if (s.name.rfind("pentagon", 0) == 0)
            CHECK(s.samples == 1000);
    }
    CHECK(rep.max_dual_residual < 1e-9);
    CHECK(rep.max_gauss_bonnet_residual < 1e-9);
    CHECK(secs < 60);
    MESSAGE("campaign seconds: " << secs);
}
