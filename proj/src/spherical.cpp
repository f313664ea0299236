#include "hirzebruch/spherical.hpp"

#include "hirzebruch/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace hirz::spherical {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double shape_tol = 1e-7; // equilateral / equiangular preconditions
constexpr double sample_margin = 1e-3;

std::size_t idx(int i, int n)
{
    return static_cast<std::size_t>(((i % n) + n) % n);
}

double vertex_angle(const Vec3& prev, const Vec3& cur, const Vec3& next)
{
    return angle_between(cur.cross(next), cur.cross(prev));
}

double uniform(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return lo + (hi - lo) * uniform(rng);
}

double spread(const std::vector<double>& xs)
{
    auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    return *hi - *lo;
}

double cross2(const Vec2& a, const Vec2& b)
{
    return a.x() * b.y() - a.y() * b.x();
}

std::vector<Vec3> regular_vertices(int k, double colatitude)
{
    std::vector<Vec3> out;
    double s = std::sin(colatitude), c = std::cos(colatitude);
    for (int j = 0; j < k; ++j) {
        double phi = 2 * pi * j / k;
        out.emplace_back(s * std::cos(phi), s * std::sin(phi), c);
    }
    return out;
}

// Andrew's monotone chain; counter-clockwise, collinear points dropped.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts)
{
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    if (pts.size() < 3)
        return pts;
    std::vector<Vec2> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0)
            --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        const auto& p = pts[i];
        while (k >= t && cross2(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0)
            --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return hull;
}

bool well_conditioned(const std::vector<double>& edges, const std::vector<double>& angs)
{
    for (double e : edges)
        if (e < sample_margin)
            return false;
    for (double a : angs)
        if (a < sample_margin || a > pi - sample_margin)
            return false;
    return true;
}

Eigen::Matrix3d rot_y(double t)
{
    // maps e3 to cos t e3 + sin t e1: a step forward along the heading e1
    Eigen::Matrix3d r;
    r << std::cos(t), 0, std::sin(t), 0, 1, 0, -std::sin(t), 0, std::cos(t);
    return r;
}

Eigen::Matrix3d rot_z(double t)
{
    Eigen::Matrix3d r;
    r << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
    return r;
}

Vec3 vee_skew(const Eigen::Matrix3d& m)
{
    Eigen::Matrix3d s = (m - m.transpose()) / 2;
    return {s(2, 1), s(0, 2), s(1, 0)};
}

Eigen::Matrix3d random_rotation(std::mt19937_64& rng)
{
    // uniform unit quaternion from three uniforms
    double u1 = uniform(rng), u2 = uniform(rng), u3 = uniform(rng);
    Eigen::Quaterniond q(std::sqrt(1 - u1) * std::sin(2 * pi * u2), std::sqrt(1 - u1) * std::cos(2 * pi * u2),
                         std::sqrt(u1) * std::sin(2 * pi * u3), std::sqrt(u1) * std::cos(2 * pi * u3));
    return q.normalized().toRotationMatrix();
}

} // namespace

double angle_between(const Vec3& a, const Vec3& b)
{
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

// ---------------------------------------------------------------------------

SphericalPolygon SphericalPolygon::from_vertices(std::vector<Vec3> vertices, double tol)
{
    const int v = static_cast<int>(vertices.size());
    if (v < 3)
        throw InputError("a spherical polygon needs at least three vertices");
    for (auto& a : vertices) {
        double n = a.norm();
        if (!std::isfinite(n) || std::abs(n - 1) > 1e-6)
            throw InputError("polygon vertices must be unit vectors");
        a /= n;
    }
    for (int i = 0; i < v; ++i) {
        const Vec3& a = vertices[idx(i, v)];
        const Vec3& b = vertices[idx(i + 1, v)];
        Vec3 normal = a.cross(b);
        if (normal.norm() <= tol)
            throw InputError("degenerate edge " + std::to_string(i));
        for (int j = 0; j < v; ++j) {
            if (j == i || j == (i + 1) % v)
                continue;
            if (normal.dot(vertices[idx(j, v)]) <= tol)
                throw InputError("polygon is not strictly convex and counter-clockwise at edge " + std::to_string(i));
        }
    }
    SphericalPolygon p;
    p.vertices_ = std::move(vertices);
    Vec3 w = p.witness();
    for (const auto& a : p.vertices_)
        if (w.dot(a) <= tol)
            throw InputError("polygon is not contained in an open hemisphere");
    return p;
}

SphericalPolygon SphericalPolygon::bigon(const Vec3& pole, double angle)
{
    if (!(angle > 0 && angle < pi))
        throw DomainError("bigon angle must lie in (0, pi)");
    double n = pole.norm();
    if (!(n > 0) || !std::isfinite(n))
        throw InputError("bigon pole must be nonzero");
    SphericalPolygon p;
    p.vertices_ = {pole / n, -pole / n};
    p.bigon_angle_ = angle;
    return p;
}

double SphericalPolygon::bigon_angle() const
{
    if (!bigon_angle_)
        throw DomainError("not a bigon");
    return *bigon_angle_;
}

const Vec3& SphericalPolygon::vertex(int i) const
{
    return vertices_[idx(i, size())];
}

Vec3 SphericalPolygon::witness() const
{
    if (is_bigon())
        throw DomainError("a bigon has no hemisphere witness");
    // every inward edge normal has non-negative product with every vertex
    Vec3 w = Vec3::Zero();
    for (int i = 0; i < size(); ++i)
        w += vertex(i).cross(vertex(i + 1)).normalized();
    return w.normalized();
}

std::vector<double> edge_lengths(const SphericalPolygon& p)
{
    if (p.is_bigon())
        return {pi, pi};
    std::vector<double> out;
    for (int i = 0; i < p.size(); ++i)
        out.push_back(angle_between(p.vertex(i), p.vertex(i + 1)));
    return out;
}

std::vector<double> angles(const SphericalPolygon& p)
{
    if (p.is_bigon())
        return {p.bigon_angle(), p.bigon_angle()};
    std::vector<double> out;
    for (int i = 0; i < p.size(); ++i)
        out.push_back(vertex_angle(p.vertex(i - 1), p.vertex(i), p.vertex(i + 1)));
    return out;
}

Measure measure(const SphericalPolygon& p)
{
    if (p.is_bigon())
        throw DomainError("measure is undefined for a bigon; its edges have length pi");
    Measure m;
    m.edge_lengths = edge_lengths(p);
    m.angles = angles(p);
    double excess = -(p.size() - 2) * pi;
    for (double a : m.angles)
        excess += a;
    m.area = excess;
    return m;
}

SphericalPolygon dual(const SphericalPolygon& p)
{
    if (p.is_bigon())
        throw DomainError("the polar of a bigon is a segment");
    std::vector<Vec3> normals;
    for (int i = 0; i < p.size(); ++i)
        normals.push_back(p.vertex(i).cross(p.vertex(i + 1)).normalized());
    return SphericalPolygon::from_vertices(std::move(normals), 0.0);
}

double dual_involution_residual(const SphericalPolygon& p)
{
    SphericalPolygon dd = dual(dual(p));
    double worst = 0;
    for (int i = 0; i < p.size(); ++i)
        worst = std::max(worst, (dd.vertex(i) - p.vertex(i + 1)).norm());
    return worst;
}

double ConeSphere::gauss_bonnet_residual() const
{
    double s = area - 4 * pi;
    for (double t : cone_angles)
        s += 2 * pi - t;
    return s;
}

ConeSphere double_polygon(const SphericalPolygon& p)
{
    ConeSphere c;
    if (p.is_bigon()) {
        c.cone_angles = {2 * p.bigon_angle(), 2 * p.bigon_angle()};
        c.area = 4 * p.bigon_angle();
        return c;
    }
    Measure m = measure(p);
    for (double a : m.angles)
        c.cone_angles.push_back(2 * a);
    c.area = 2 * m.area;
    return c;
}

SphericalPolygon regular_polygon(int k, double beta)
{
    if (k < 2)
        throw InputError("a regular polygon needs k >= 2");
    if (k == 2)
        return SphericalPolygon::bigon(Vec3::UnitZ(), beta);
    double lo_beta = (k - 2) * pi / k;
    if (!(beta > lo_beta && beta < pi))
        throw DomainError("no convex regular spherical " + std::to_string(k) + "-gon has angle " + std::to_string(beta));
    // the vertex angle grows from (k-2) pi / k to pi as the colatitude goes
    // from 0 to pi/2
    double lo = 0, hi = pi / 2;
    for (int it = 0; it < 200 && hi - lo > 0; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        auto v = regular_vertices(k, mid);
        if (vertex_angle(v[static_cast<std::size_t>(k - 1)], v[0], v[1]) < beta)
            lo = mid;
        else
            hi = mid;
    }
    return SphericalPolygon::from_vertices(regular_vertices(k, 0.5 * (lo + hi)), 0.0);
}

double regular_edge(int k, double beta)
{
    auto p = regular_polygon(k, beta);
    if (p.is_bigon())
        return pi;
    return angle_between(p.vertex(0), p.vertex(1));
}

// ---------------------------------------------------------------------------

std::vector<double> edge_lengths(const EuclideanPolygon& p)
{
    std::vector<double> out;
    const int v = static_cast<int>(p.vertices.size());
    for (int i = 0; i < v; ++i)
        out.push_back((p.vertices[idx(i + 1, v)] - p.vertices[idx(i, v)]).norm());
    return out;
}

std::vector<double> angles(const EuclideanPolygon& p)
{
    std::vector<double> out;
    const int v = static_cast<int>(p.vertices.size());
    for (int i = 0; i < v; ++i) {
        Vec2 u = p.vertices[idx(i - 1, v)] - p.vertices[idx(i, v)];
        Vec2 w = p.vertices[idx(i + 1, v)] - p.vertices[idx(i, v)];
        out.push_back(std::atan2(std::abs(cross2(u, w)), u.dot(w)));
    }
    return out;
}

bool is_convex(const EuclideanPolygon& p, double tol)
{
    const int v = static_cast<int>(p.vertices.size());
    if (v < 3)
        return false;
    for (int i = 0; i < v; ++i) {
        Vec2 a = p.vertices[idx(i, v)] - p.vertices[idx(i - 1, v)];
        Vec2 b = p.vertices[idx(i + 1, v)] - p.vertices[idx(i, v)];
        if (cross2(a, b) <= tol * a.norm() * b.norm())
            return false;
    }
    return true;
}

FlattenResult flatten(const SphericalPolygon& p)
{
    if (p.is_bigon())
        throw InputError("flatten needs a polygon with at least three vertices");
    Measure m = measure(p);
    double perimeter = 0;
    for (double e : m.edge_lengths)
        perimeter += e;
    if (perimeter >= 2 * pi)
        throw InputError("flatten needs perimeter < 2 pi");

    const int v = p.size();
    FlattenResult r;
    auto& b = r.polygon.vertices;
    b.assign(static_cast<std::size_t>(v), Vec2::Zero());
    double a01 = m.edge_lengths[0];
    b[1] = Vec2(a01, 0);
    double heading = 0;
    for (int i = 1; i + 1 < v; ++i) {
        double a = angle_between(p.vertex(0), p.vertex(i));
        double s = m.edge_lengths[static_cast<std::size_t>(i)];
        double c = angle_between(p.vertex(0), p.vertex(i + 1));
        double cos_g = std::clamp((a * a + c * c - s * s) / (2 * a * c), -1.0, 1.0);
        heading += std::acos(cos_g);
        b[static_cast<std::size_t>(i + 1)] = Vec2(c * std::cos(heading), c * std::sin(heading));
    }
    auto flat_edges = edge_lengths(r.polygon);
    auto flat_angles = angles(r.polygon);
    for (int i = 0; i < v; ++i) {
        r.max_edge_error = std::max(r.max_edge_error, std::abs(flat_edges[idx(i, v)] - m.edge_lengths[idx(i, v)]));
        r.angle_margins.push_back(m.angles[idx(i, v)] - flat_angles[idx(i, v)]);
    }
    r.convex = is_convex(r.polygon);
    return r;
}

// ---------------------------------------------------------------------------

double parity_bound(int v)
{
    if (v < 3)
        throw InputError("parity bound needs at least three vertices");
    return v % 2 == 0 ? pi : 2 * std::acos(1.0 / (v - 1));
}

namespace {

std::vector<double> consecutive_sums(const std::vector<double>& xs)
{
    std::vector<double> out;
    const int v = static_cast<int>(xs.size());
    for (int i = 0; i < v; ++i)
        out.push_back(xs[idx(i, v)] + xs[idx(i + 1, v)]);
    return out;
}

// sign = +1: sums must exceed the bound; sign = -1: stay below it.
PairReport pair_report(std::vector<double> sums, double bound, int sign, bool strict, double tol)
{
    PairReport r;
    r.sums = std::move(sums);
    r.bound = bound;
    r.strict = strict;
    r.min_margin = std::numeric_limits<double>::infinity();
    for (double s : r.sums) {
        double margin = sign * (s - bound);
        r.min_margin = std::min(r.min_margin, margin);
        if (strict ? margin <= tol : margin < -tol)
            ++r.violations;
    }
    return r;
}

void require_polygon(const SphericalPolygon& p)
{
    if (p.is_bigon())
        throw InputError("expected a polygon with at least three vertices");
}

} // namespace

PairReport check_consecutive_edges(const SphericalPolygon& p, double tol)
{
    require_polygon(p);
    Measure m = measure(p);
    if (spread(m.angles) > shape_tol)
        throw InputError("polygon is not equiangular");
    return pair_report(consecutive_sums(m.edge_lengths), 2 * pi - parity_bound(p.size()), -1, true, tol);
}

PairReport check_consecutive_angles(const SphericalPolygon& p, double tol)
{
    require_polygon(p);
    Measure m = measure(p);
    if (spread(m.edge_lengths) > shape_tol)
        throw InputError("polygon is not equilateral");
    return pair_report(consecutive_sums(m.angles), parity_bound(p.size()), +1, true, tol);
}

PairReport check_consecutive_angles(const EuclideanPolygon& p, double tol)
{
    const int v = static_cast<int>(p.vertices.size());
    if (v < 3)
        throw InputError("expected a polygon with at least three vertices");
    auto e = edge_lengths(p);
    double scale = *std::max_element(e.begin(), e.end());
    if (spread(e) > shape_tol * scale)
        throw InputError("polygon is not equilateral");
    return pair_report(consecutive_sums(angles(p)), parity_bound(v), +1, false, tol);
}

// ---------------------------------------------------------------------------

namespace {

struct QuadShape {
    bool feasible = false;
    double value = 0;
};

// Angle between sides p and q of a triangle with third side r, stable for
// needle-like triangles (Kahan).
double triangle_angle(double p, double q, double r)
{
    double a = std::max(p, q), b = std::min(p, q), c = r;
    double mu = b >= c ? c - (a - b) : b - (a - c);
    double num = ((a - b) + c) * mu, den = (a + (b + c)) * ((a - c) + b);
    if (num < 0 || den <= 0)
        return std::numeric_limits<double>::quiet_NaN();
    return 2 * std::atan(std::sqrt(num / den));
}

// |AB| = 1, |DA| = d at angle a, diagonal BD, then C across BD with |BC| = b
// and |CD| = c. Convex when the split angles at B and D sum to at most pi.
QuadShape quad_at(double a, double b, double c, double d)
{
    double s = std::sin(a / 2);
    double e = std::sqrt((1 - d) * (1 - d) + 4 * d * s * s);
    if (e > b + c || e < std::abs(b - c))
        return {};
    double b1 = triangle_angle(1, e, d), b2 = triangle_angle(e, b, c);
    double d1 = triangle_angle(d, e, 1), d2 = triangle_angle(e, c, b);
    if (std::isnan(b1 + b2 + d1 + d2) || b1 + b2 > pi || d1 + d2 > pi)
        return {};
    return {true, a + b1 + b2};
}

} // namespace

QuadrilateralReport quadrilateral_min(int b, int c, int d, double tol)
{
    if (b < 1 || c < 1 || d < 1)
        throw InputError("quadrilateral sides must be positive integers");
    std::array<int, 4> s{1, b, c, d};
    int total = 1 + b + c + d;
    for (int x : s)
        if (2 * x >= total)
            throw InputError("no convex quadrilateral has these side lengths");

    const int grid = 20000;
    auto eval = [&](double a) { return quad_at(a, b, c, d); };
    double best = std::numeric_limits<double>::infinity(), best_a = 0;
    auto consider = [&](double a) {
        auto q = eval(a);
        if (q.feasible && q.value < best) {
            best = q.value;
            best_a = a;
        }
        return q.feasible;
    };
    std::vector<char> feasible(grid + 1, 0);
    auto at = [&](int i) { return pi * (i + 0.5) / (grid + 1); };
    for (int i = 0; i <= grid; ++i)
        feasible[static_cast<std::size_t>(i)] = consider(at(i)) ? 1 : 0;
    if (!std::isfinite(best))
        throw InputError("no convex quadrilateral has these side lengths");

    // the infimum may sit where the quadrilateral degenerates
    for (int i = 0; i < grid; ++i) {
        if (feasible[static_cast<std::size_t>(i)] == feasible[static_cast<std::size_t>(i + 1)])
            continue;
        double in = at(feasible[static_cast<std::size_t>(i)] ? i : i + 1);
        double out = at(feasible[static_cast<std::size_t>(i)] ? i + 1 : i);
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (in + out);
            (eval(mid).feasible ? in : out) = mid;
        }
        consider(in);
    }
    // golden-section refinement around the best grid point
    double lo = std::max(1e-12, best_a - pi / (grid + 1)), hi = std::min(pi - 1e-12, best_a + pi / (grid + 1));
    const double g = (std::sqrt(5.0) - 1) / 2;
    auto f = [&](double a) {
        auto q = eval(a);
        return q.feasible ? q.value : std::numeric_limits<double>::infinity();
    };
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 100; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    consider(0.5 * (lo + hi));

    QuadrilateralReport r;
    r.minimum = best;
    r.argmin_angle_a = best_a;
    r.bound = parity_bound(total);
    r.satisfied = best >= r.bound - tol;
    return r;
}

PentagonReport pentagon_refinement(const SphericalPolygon& p, PentagonForm form, double tol)
{
    require_polygon(p);
    if (p.size() != 5)
        throw InputError("pentagon_refinement needs five vertices");
    Measure m = measure(p);
    PentagonReport r;
    r.form = form;
    if (form == PentagonForm::equiangular) {
        if (spread(m.angles) > shape_tol)
            throw InputError("polygon is not equiangular");
        r.sums = consecutive_sums(m.edge_lengths);
        r.hypothesis = std::all_of(r.sums.begin(), r.sums.end(), [&](double s) { return s > 2 * pi / 3 + tol; });
        r.conclusion = std::all_of(r.sums.begin(), r.sums.end(), [&](double s) { return s < pi - tol; });
    } else {
        if (spread(m.edge_lengths) > shape_tol)
            throw InputError("polygon is not equilateral");
        r.sums = consecutive_sums(m.angles);
        r.hypothesis = std::all_of(r.sums.begin(), r.sums.end(), [&](double s) { return s < 4 * pi / 3 - tol; });
        r.conclusion = std::all_of(r.sums.begin(), r.sums.end(), [&](double s) { return s > pi + tol; });
    }
    r.vacuous = !r.hypothesis;
    r.violated = r.hypothesis && !r.conclusion;
    return r;
}

RigidityScan regular_rigidity_scan(int grid_points, int k_max)
{
    if (grid_points < 1 || k_max < 3)
        throw InputError("rigidity scan needs grid_points >= 1 and k_max >= 3");
    RigidityScan scan;
    for (int k = 3; k <= k_max; ++k) {
        double lo = (k - 2) * pi / k;
        for (int g = 0; g < grid_points; ++g) {
            RigidityRow row;
            row.k = k;
            row.beta = lo + (pi - lo) * (g + 1) / (grid_points + 1);
            for (int j = 2; j <= k_max; ++j)
                if (j == 2 || row.beta > (j - 2) * pi / j)
                    row.edges.emplace_back(j, regular_edge(j, row.beta));
            row.decreasing = true;
            for (std::size_t i = 1; i < row.edges.size(); ++i)
                if (!(row.edges[i].second < row.edges[i - 1].second))
                    row.decreasing = false;
            if (row.edges.front().second != pi)
                row.decreasing = false;
            if (!row.decreasing)
                ++scan.violations;
            scan.rows.push_back(std::move(row));
        }
    }
    return scan;
}

DescentReport deformation_descent(const EuclideanPolygon& p, double tol)
{
    const int v = static_cast<int>(p.vertices.size());
    if (v < 5)
        throw InputError("deformation_descent needs at least five vertices");
    if (!is_convex(p))
        throw InputError("deformation_descent needs a convex counter-clockwise polygon");
    const auto& b = p.vertices;
    auto grad_phi = [](const Vec2& u) -> Vec2 { return Vec2(-u.y(), u.x()) / u.squaredNorm(); };

    // interior angle at i is arg(B_{i-1} - B_i) - arg(B_{i+1} - B_i)
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(2 * v);
    for (int i : {0, 1}) {
        Vec2 u = b[idx(i - 1, v)] - b[idx(i, v)];
        Vec2 w = b[idx(i + 1, v)] - b[idx(i, v)];
        Vec2 gu = grad_phi(u), gw = grad_phi(w);
        grad.segment<2>(2 * static_cast<Eigen::Index>(idx(i - 1, v))) += gu;
        grad.segment<2>(2 * static_cast<Eigen::Index>(idx(i + 1, v))) -= gw;
        grad.segment<2>(2 * static_cast<Eigen::Index>(idx(i, v))) += gw - gu;
    }
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(v, 2 * v);
    for (int i = 0; i < v; ++i) {
        Vec2 e = b[idx(i + 1, v)] - b[idx(i, v)];
        jac.block<1, 2>(i, 2 * static_cast<Eigen::Index>(idx(i + 1, v))) = 2 * e.transpose();
        jac.block<1, 2>(i, 2 * static_cast<Eigen::Index>(idx(i, v))) = -2 * e.transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-10 * sv(0))
            ++rank;
    Eigen::MatrixXd null = svd.matrixV().rightCols(2 * v - rank);
    Eigen::VectorXd coeff = null.transpose() * grad;

    DescentReport r;
    r.magnitude = coeff.norm();
    r.found = r.magnitude > tol;
    r.direction = Eigen::VectorXd::Zero(2 * v);
    if (r.found)
        r.direction = -(null * coeff) / r.magnitude;
    r.directional_derivative = grad.dot(r.direction);
    return r;
}

// ---------------------------------------------------------------------------

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

constexpr int rejection_budget = 1000;

// Closes the planar turtle path with unit steps: turning angles tau_0..tau_{v-2}
// are corrected by minimum-norm Newton steps, tau_{v-1} closes the heading.
bool close_plane(std::vector<double>& tau)
{
    const int v = static_cast<int>(tau.size());
    for (int it = 0; it < 100; ++it) {
        std::vector<double> phi(static_cast<std::size_t>(v), 0.0);
        for (int k = 1; k < v; ++k)
            phi[static_cast<std::size_t>(k)] = phi[static_cast<std::size_t>(k - 1)] + tau[static_cast<std::size_t>(k - 1)];
        Eigen::Vector2d f = Eigen::Vector2d::Zero();
        for (double a : phi)
            f += Eigen::Vector2d(std::cos(a), std::sin(a));
        if (f.norm() < 1e-14)
            break;
        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2, v - 1);
        for (int j = 0; j < v - 1; ++j) {
            // phi_k depends on tau_j for k > j
            for (int k = j + 1; k < v; ++k) {
                jac(0, j) -= std::sin(phi[static_cast<std::size_t>(k)]);
                jac(1, j) += std::cos(phi[static_cast<std::size_t>(k)]);
            }
        }
        Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-f);
        for (int j = 0; j < v - 1; ++j)
            tau[static_cast<std::size_t>(j)] += step(j);
        if (it == 99)
            return false;
    }
    double sum = 0;
    for (int j = 0; j < v - 1; ++j)
        sum += tau[static_cast<std::size_t>(j)];
    tau[static_cast<std::size_t>(v - 1)] = 2 * pi - sum;
    return true;
}

Eigen::Matrix3d turtle(const std::vector<double>& tau, double edge, std::vector<Vec3>* vertices)
{
    Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
    Eigen::Matrix3d step = rot_y(edge);
    for (double t : tau) {
        if (vertices)
            vertices->push_back(r.col(2));
        r = r * step * rot_z(t);
    }
    return r;
}

bool close_sphere(std::vector<double>& tau, double edge)
{
    const int v = static_cast<int>(tau.size());
    Eigen::Matrix3d kz;
    kz << 0, -1, 0, 1, 0, 0, 0, 0, 0;
    Eigen::Matrix3d step = rot_y(edge);
    for (int it = 0; it <= 100; ++it) {
        std::vector<Eigen::Matrix3d> prefix(static_cast<std::size_t>(v + 1), Eigen::Matrix3d::Identity());
        for (int k = 0; k < v; ++k)
            prefix[static_cast<std::size_t>(k + 1)] =
                prefix[static_cast<std::size_t>(k)] * step * rot_z(tau[static_cast<std::size_t>(k)]);
        const Eigen::Matrix3d& total = prefix.back();
        Vec3 f = vee_skew(total);
        if (f.norm() < 1e-14)
            return total.trace() > 3 - 1e-9;
        if (it == 100)
            return false;
        Eigen::MatrixXd jac(3, v);
        for (int k = 0; k < v; ++k) {
            // d total / d tau_k = prefix_{k+1} K_z prefix_{k+1}^{-1} total
            const Eigen::Matrix3d& pk = prefix[static_cast<std::size_t>(k + 1)];
            jac.col(k) = vee_skew(pk * kz * pk.transpose() * total);
        }
        Eigen::VectorXd d = jac.completeOrthogonalDecomposition().solve(-f);
        for (int k = 0; k < v; ++k)
            tau[static_cast<std::size_t>(k)] += d(k);
    }
    return false;
}

} // namespace

EuclideanPolygon sample_equilateral_plane(int v, std::uint64_t seed)
{
    if (v < 3)
        throw InputError("sample_equilateral needs v >= 3");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < rejection_budget; ++attempt) {
        std::vector<double> w(static_cast<std::size_t>(v));
        double total = 0;
        for (auto& x : w)
            total += (x = uniform(rng, 0.3, 1.0));
        std::vector<double> tau;
        for (double x : w)
            tau.push_back(2 * pi * x / total);
        if (!close_plane(tau))
            continue;
        if (!std::all_of(tau.begin(), tau.end(), [](double t) { return t > sample_margin && t < pi - sample_margin; }))
            continue;
        EuclideanPolygon p;
        Vec2 pos = Vec2::Zero();
        double heading = 0;
        for (int k = 0; k < v; ++k) {
            p.vertices.push_back(pos);
            pos += Vec2(std::cos(heading), std::sin(heading));
            heading += tau[static_cast<std::size_t>(k)];
        }
        if (is_convex(p))
            return p;
    }
    throw DomainError("sample_equilateral: rejection budget exhausted");
}

SphericalPolygon sample_equilateral_sphere(int v, std::uint64_t seed, std::optional<double> edge)
{
    if (v < 3)
        throw InputError("sample_equilateral needs v >= 3");
    if (edge && !(*edge > 0 && *edge < 2 * pi / v))
        throw InputError("edge length must lie in (0, 2 pi / v)");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < rejection_budget; ++attempt) {
        double len = edge ? *edge : uniform(rng, 0.05, 0.9) * 2 * pi / v;
        // start near the regular polygon with this edge, then perturb
        double sin_half_beta = std::cos(pi / v) / std::cos(len / 2);
        double beta = sin_half_beta >= 1 ? pi - 1e-3 : 2 * std::asin(sin_half_beta);
        double turn = pi - beta;
        double amp = uniform(rng) * 0.8 * std::min(turn, pi - turn);
        std::vector<double> tau;
        for (int k = 0; k < v; ++k)
            tau.push_back(turn + amp * (uniform(rng) - 0.5) * 2);
        if (!close_sphere(tau, len))
            continue;
        if (!std::all_of(tau.begin(), tau.end(), [](double t) { return t > sample_margin && t < pi - sample_margin; }))
            continue;
        std::vector<Vec3> verts;
        turtle(tau, len, &verts);
        try {
            return SphericalPolygon::from_vertices(std::move(verts));
        } catch (const InputError&) {
            continue;
        }
    }
    throw DomainError("sample_equilateral: rejection budget exhausted");
}

SphericalPolygon sample_convex_sphere(int max_vertices, std::uint64_t seed)
{
    if (max_vertices < 3)
        throw InputError("sample_convex needs at least three vertices");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < rejection_budget; ++attempt) {
        double radius = std::tan(uniform(rng, 0.2, 1.4));
        std::vector<Vec2> pts;
        for (int i = 0; i < max_vertices; ++i) {
            double r = radius * std::sqrt(uniform(rng)), t = 2 * pi * uniform(rng);
            pts.emplace_back(r * std::cos(t), r * std::sin(t));
        }
        Eigen::Matrix3d rot = random_rotation(rng);
        auto hull = convex_hull(pts);
        if (hull.size() < 3)
            continue;
        // the gnomonic chart maps convex planar polygons to convex spherical ones
        std::vector<Vec3> verts;
        for (const auto& h : hull)
            verts.push_back(rot * Vec3(h.x(), h.y(), 1).normalized());
        try {
            auto p = SphericalPolygon::from_vertices(std::move(verts));
            if (well_conditioned(edge_lengths(p), angles(p)))
                return p;
        } catch (const InputError&) {
        }
    }
    throw DomainError("sample_convex: rejection budget exhausted");
}

EuclideanPolygon sample_convex_plane(int max_vertices, std::uint64_t seed)
{
    if (max_vertices < 3)
        throw InputError("sample_convex needs at least three vertices");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < rejection_budget; ++attempt) {
        std::vector<Vec2> pts;
        for (int i = 0; i < max_vertices; ++i)
            pts.emplace_back(uniform(rng), uniform(rng));
        EuclideanPolygon p{convex_hull(pts)};
        if (p.vertices.size() >= 3 && is_convex(p) && well_conditioned(edge_lengths(p), angles(p)))
            return p;
    }
    throw DomainError("sample_convex: rejection budget exhausted");
}

// ---------------------------------------------------------------------------

int SelftestReport::total_violations() const
{
    int n = 0;
    for (const auto& s : statements)
        n += s.violations;
    return n;
}

SelftestReport selftest(int samples, std::uint64_t seed, double tol)
{
    if (samples < 1)
        throw InputError("selftest needs at least one sample");
    SelftestReport rep;
    auto stream = [&](std::uint64_t id, int i) {
        return split_seed(split_seed(seed, id), static_cast<std::uint64_t>(i));
    };
    auto start = [&](const char* name) -> StatementResult& {
        rep.statements.push_back({name, 0, 0, 0, std::numeric_limits<double>::infinity()});
        return rep.statements.back();
    };
    auto note = [](StatementResult& s, double margin, bool violated) {
        ++s.samples;
        s.worst_margin = std::min(s.worst_margin, margin);
        if (violated)
            ++s.violations;
    };

    {
        auto& s = start("equiangular_edge_sums");
        for (int i = 0; i < samples; ++i) {
            auto p = dual(sample_equilateral_sphere(3 + i % 6, stream(1, i)));
            auto r = check_consecutive_edges(p, tol);
            note(s, r.min_margin, r.violations > 0);
        }
    }
    {
        auto& s = start("equilateral_angle_sums_sphere");
        for (int i = 0; i < samples; ++i) {
            auto r = check_consecutive_angles(sample_equilateral_sphere(3 + i % 6, stream(2, i)), tol);
            note(s, r.min_margin, r.violations > 0);
        }
    }
    {
        auto& s = start("equilateral_angle_sums_plane");
        for (int i = 0; i < samples; ++i) {
            auto r = check_consecutive_angles(sample_equilateral_plane(3 + i % 6, stream(3, i)), tol);
            note(s, r.min_margin, r.violations > 0);
        }
    }
    for (auto form : {PentagonForm::equilateral, PentagonForm::equiangular}) {
        auto& s = start(form == PentagonForm::equilateral ? "pentagon_refinement_equilateral"
                                                          : "pentagon_refinement_equiangular");
        std::uint64_t id = form == PentagonForm::equilateral ? 4 : 5;
        int met = 0;
        for (int i = 0; met < samples && i < 50 * samples; ++i) {
            std::mt19937_64 rng(stream(id, i));
            double edge = uniform(rng, 0.55, 1.2);
            auto p = sample_equilateral_sphere(5, rng(), edge);
            if (form == PentagonForm::equiangular)
                p = dual(p);
            auto r = pentagon_refinement(p, form, tol);
            if (r.vacuous) {
                ++s.vacuous;
                continue;
            }
            ++met;
            double margin = std::numeric_limits<double>::infinity();
            for (double x : r.sums)
                margin = std::min(margin, form == PentagonForm::equilateral ? x - pi : pi - x);
            note(s, margin, r.violated);
        }
    }
    {
        auto& s = start("flatten_comparison");
        for (int i = 0; i < samples; ++i) {
            auto p = i % 2 == 0 ? sample_convex_sphere(3 + i % 7, stream(6, i))
                                : sample_equilateral_sphere(3 + i % 6, stream(6, i));
            auto r = flatten(p);
            double margin = *std::min_element(r.angle_margins.begin(), r.angle_margins.end());
            note(s, margin, margin <= tol || r.max_edge_error >= tol);
            if (!r.convex)
                ++rep.flatten_nonconvex;
        }
    }
    {
        auto& s = start("deformation_descent");
        for (int i = 0; i < samples; ++i) {
            EuclideanPolygon p;
            if (i % 2 == 0) {
                p = sample_equilateral_plane(5 + i % 4, stream(7, i));
            } else {
                for (int j = 0; p.vertices.size() < 5; ++j)
                    p = sample_convex_plane(12, split_seed(stream(7, i), static_cast<std::uint64_t>(j)));
            }
            auto r = deformation_descent(p, tol);
            note(s, r.magnitude, !r.found || !(r.directional_derivative < 0));
        }
    }
    {
        auto& s = start("dual_involution");
        for (int i = 0; i < samples; ++i) {
            auto p = sample_convex_sphere(3 + i % 7, stream(8, i));
            double res = dual_involution_residual(p);
            rep.max_dual_residual = std::max(rep.max_dual_residual, res);
            note(s, tol - res, res >= tol);
        }
    }
    {
        auto& s = start("doubling_gauss_bonnet");
        for (int i = 0; i < samples; ++i) {
            auto p = sample_convex_sphere(3 + i % 7, stream(9, i));
            double res = std::abs(double_polygon(p).gauss_bonnet_residual());
            rep.max_gauss_bonnet_residual = std::max(rep.max_gauss_bonnet_residual, res);
            note(s, tol - res, res >= tol);
        }
    }
    {
        auto& s = start("regular_rigidity");
        auto scan = regular_rigidity_scan();
        for (const auto& row : scan.rows) {
            double margin = std::numeric_limits<double>::infinity();
            for (std::size_t j = 1; j < row.edges.size(); ++j)
                margin = std::min(margin, row.edges[j - 1].second - row.edges[j].second);
            note(s, margin, !row.decreasing);
        }
    }
    return rep;
}

} // namespace hirz::spherical
