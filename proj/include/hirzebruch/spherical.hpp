#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hirz::spherical {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

inline constexpr double default_tol = 1e-9;

/// Angle between two nonzero vectors, accurate near 0 and pi.
double angle_between(const Vec3& a, const Vec3& b);

/// A convex spherical polygon on the unit sphere with counter-clockwise
/// vertices (seen from outside), or a bigon (lune).
class SphericalPolygon {
public:
    /// Validates unit length, counter-clockwise orientation, strict convexity
    /// and containment in an open hemisphere. Throws InputError otherwise.
    static SphericalPolygon from_vertices(std::vector<Vec3> vertices, double tol = default_tol);

    /// The lune between two half great circles from `pole` to -`pole`
    /// meeting at angle `angle`.
    static SphericalPolygon bigon(const Vec3& pole, double angle);

    bool is_bigon() const { return bigon_angle_.has_value(); }
    double bigon_angle() const;
    int size() const { return static_cast<int>(vertices_.size()); }
    const std::vector<Vec3>& vertices() const { return vertices_; }
    const Vec3& vertex(int i) const;

    /// Centre of an open hemisphere containing the polygon.
    Vec3 witness() const;

private:
    std::vector<Vec3> vertices_;
    std::optional<double> bigon_angle_;
};

/// edge_lengths[i] = |A_i A_{i+1}|, angles[i] = angle at A_i.
struct Measure {
    std::vector<double> edge_lengths;
    std::vector<double> angles;
    double area = 0;
};

/// Throws DomainError for bigons; use edge_lengths/angles for those.
Measure measure(const SphericalPolygon& p);
std::vector<double> edge_lengths(const SphericalPolygon& p);
std::vector<double> angles(const SphericalPolygon& p);

/// Polar polygon: B_i is the inward unit normal of the edge A_i A_{i+1}.
/// Then edges(dual)[i] = pi - angles[i+1] and angles(dual)[i] = pi - edges[i];
/// dual(dual(P)) has vertices A_1, ..., A_{v-1}, A_0.
SphericalPolygon dual(const SphericalPolygon& p);

/// Largest vertex distance between dual(dual(P)) and P shifted by one.
double dual_involution_residual(const SphericalPolygon& p);

struct ConeSphere {
    std::vector<double> cone_angles;
    double area = 0;
    /// sum (2 pi - theta_i) + area - 4 pi
    double gauss_bonnet_residual() const;
};

ConeSphere double_polygon(const SphericalPolygon& p);

/// Regular k-gon with angle beta, centred at the north pole; k = 2 gives the
/// bigon. Throws DomainError when beta is not in ((k-2) pi / k, pi).
SphericalPolygon regular_polygon(int k, double beta);

/// Edge length of regular_polygon(k, beta).
double regular_edge(int k, double beta);

// ---------------------------------------------------------------------------
// Euclidean polygons

struct EuclideanPolygon {
    std::vector<Vec2> vertices;
};

std::vector<double> edge_lengths(const EuclideanPolygon& p);
std::vector<double> angles(const EuclideanPolygon& p);
bool is_convex(const EuclideanPolygon& p, double tol = default_tol);

struct FlattenResult {
    EuclideanPolygon polygon;
    std::vector<double> angle_margins; ///< spherical minus Euclidean angle
    double max_edge_error = 0;
    bool convex = false;
};

/// Replaces each fan triangle A_0 A_i A_{i+1} by the Euclidean triangle with
/// the same sides. Needs perimeter < 2 pi.
FlattenResult flatten(const SphericalPolygon& p);

// ---------------------------------------------------------------------------
// Inequality checks

struct PairReport {
    std::vector<double> sums; ///< sums[i] over the pair (i, i+1)
    double bound = 0;
    bool strict = true;
    double min_margin = 0; ///< smallest signed distance to the bound, positive when satisfied
    int violations = 0;
};

/// Parity bound of the equilateral statements: pi for even v,
/// 2 arccos(1/(v-1)) for odd v.
double parity_bound(int v);

/// Consecutive edge sums of an equiangular spherical polygon against
/// 2 pi - parity_bound(v). Throws InputError for non-equiangular input.
PairReport check_consecutive_edges(const SphericalPolygon& p, double tol = default_tol);

/// Consecutive angle sums of an equilateral polygon against parity_bound(v):
/// strict on the sphere, non-strict in the plane.
PairReport check_consecutive_angles(const SphericalPolygon& p, double tol = default_tol);
PairReport check_consecutive_angles(const EuclideanPolygon& p, double tol = default_tol);

struct QuadrilateralReport {
    double minimum = 0;       ///< infimum of angle A + angle B over the convex closure
    double argmin_angle_a = 0;
    double bound = 0;
    bool satisfied = false;
};

/// Convex quadrilaterals ABCD with |AB| = 1, |BC| = b, |CD| = c, |DA| = d.
/// Throws InputError when no such quadrilateral exists.
QuadrilateralReport quadrilateral_min(int b, int c, int d, double tol = default_tol);

enum class PentagonForm { equiangular, equilateral };

struct PentagonReport {
    PentagonForm form = PentagonForm::equiangular;
    std::vector<double> sums;
    bool hypothesis = false;
    bool conclusion = false;
    bool vacuous = true;
    bool violated = false;
};

/// Equiangular form: edge sums > 2 pi/3 imply edge sums < pi. Equilateral
/// form: angle sums < 4 pi/3 imply angle sums > pi.
PentagonReport pentagon_refinement(const SphericalPolygon& p, PentagonForm form, double tol = default_tol);

struct RigidityRow {
    int k = 0;
    double beta = 0;
    std::vector<std::pair<int, double>> edges; ///< admissible (j, s(j, beta)), j = 2..k_max
    bool decreasing = false;
};

struct RigidityScan {
    std::vector<RigidityRow> rows;
    int violations = 0;
};

/// For each k in 3..k_max, `grid_points` angles strictly inside the
/// admissible range of k; at each one s(j, beta) over every admissible j.
RigidityScan regular_rigidity_scan(int grid_points = 50, int k_max = 12);

struct DescentReport {
    Eigen::VectorXd direction;  ///< (x_0, y_0, x_1, y_1, ...)
    double directional_derivative = 0;
    double magnitude = 0;
    bool found = false;
};

/// Edge-length preserving infinitesimal deformation decreasing angle A_0 +
/// angle A_1. Needs a convex polygon with at least five vertices.
DescentReport deformation_descent(const EuclideanPolygon& p, double tol = default_tol);

// ---------------------------------------------------------------------------
// Samplers

/// Deterministic 64-bit mixing, used to derive per-sample seeds.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

EuclideanPolygon sample_equilateral_plane(int v, std::uint64_t seed);

/// Convex equilateral spherical polygon. The edge length is `edge` when
/// given, otherwise drawn below 2 pi / v.
SphericalPolygon sample_equilateral_sphere(int v, std::uint64_t seed, std::optional<double> edge = std::nullopt);

/// Convex hull of random points in a cap of angular radius < pi/2 (in the
/// unit square for the plane). Angles stay away from pi.
SphericalPolygon sample_convex_sphere(int max_vertices, std::uint64_t seed);
EuclideanPolygon sample_convex_plane(int max_vertices, std::uint64_t seed);

// ---------------------------------------------------------------------------

struct StatementResult {
    std::string name;
    int samples = 0; ///< samples meeting the hypothesis
    int vacuous = 0; ///< samples drawn but outside the hypothesis
    int violations = 0;
    double worst_margin = 0;
};

struct SelftestReport {
    std::vector<StatementResult> statements;
    double max_dual_residual = 0;
    double max_gauss_bonnet_residual = 0;
    int flatten_nonconvex = 0; ///< reported, not counted as a violation
    int total_violations() const;
};

/// Runs every inequality statement on `samples` seeded polygons each.
SelftestReport selftest(int samples, std::uint64_t seed, double tol = default_tol);

} // namespace hirz::spherical
