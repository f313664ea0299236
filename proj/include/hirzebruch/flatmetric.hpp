#pragma once

#include "hirzebruch/arrangement.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hirz::flat {

/// Common angle of the sectors at a point of multiplicity k in the flat
/// metric of a Hirzebruch arrangement with parameter n: pi/2 for k = 2,
/// otherwise half the edge of the regular spherical k-gon with angle
/// pi (n-1)/n. Throws DomainError when that polygon does not exist (k >= 2n).
double sector_angle(int k, int n);

struct SectorModel {
    int n = 0;
    double cone_angle_per_line = 0; ///< 2 pi (n-1)/n
    std::map<int, double> alpha;    ///< every admissible k in 2..k_max
};

SectorModel sector_model(int n, int k_max = 5);

struct TriangleShape {
    std::array<double, 3> angles{}; ///< (pi/2, alpha(3), alpha(d))
    double residual = 0;            ///< angle sum minus pi
    bool flat = false;
};

TriangleShape triangle_shape(int n, int d, double tol = 1e-9);

struct ConsistencyCell {
    int d = 0;
    int n = 0;
    bool admissible = false;
    double residual = 0;
    bool solution = false;
    double identity_residual = 0; ///< cos^2(pi/2n) - 1/4 - cos^2(pi/d), solutions only
};

struct ConsistencyResult {
    std::vector<std::pair<int, int>> solutions; ///< (d, n)
    std::vector<ConsistencyCell> cells;
    double max_solution_residual = 0;
    double min_nonsolution_residual = 0;
    double max_identity_residual = 0;
};

/// Every (d, n) with d_min <= d <= d_max and 2 <= n <= n_max whose triangle
/// (pi/2, alpha(3), alpha(d)) is flat.
ConsistencyResult solve_consistency(int d_min = 3, int d_max = 5, int n_max = 100, double tol = 1e-9);

struct FaceReport {
    std::array<int, 3> vertices{};
    std::array<int, 3> multiplicities{};
    std::array<double, 3> angles{};
    double angle_sum = 0;
    double scale = 0; ///< circumdiameter after propagating side lengths
};

struct VertexReport {
    int multiplicity = 0;
    int corners = 0;
    double cone_angle = 0;
    double expected = 0;
};

struct MetricReport {
    int n = 0;
    std::vector<FaceReport> faces;
    std::vector<VertexReport> vertices;
    std::map<std::array<int, 3>, int> face_types;
    std::vector<std::array<double, 3>> angle_triples_degrees; ///< one per face type
    double total_curvature = 0;
    double face_angle_total = 0;
    double cone_angle_total = 0;
    bool angle_sums_ok = false;
    bool isometric = false;
    bool cone_angles_ok = false;
    bool curvature_ok = false;
    bool pass = false;
    std::vector<std::string> diagnostics;
};

/// Checks that the sector angles cut RP^2 into isometric flat triangles.
/// `n_override` replaces the arrangement's n to show the check is
/// discriminating. Throws InputError for non-real, non-Hirzebruch or n = 1
/// input.
MetricReport verify_metric(const Arrangement& arr, std::optional<int> n_override = std::nullopt,
                           double tol = 1e-9);

} // namespace hirz::flat
