#include "hirzebruch/flatmetric.hpp"

#include "hirzebruch/error.hpp"
#include "hirzebruch/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

namespace hirz::flat {

namespace {

constexpr double pi = std::numbers::pi;

double degrees(double r)
{
    return r * 180 / pi;
}

} // namespace

double sector_angle(int k, int n)
{
    if (k < 2)
        throw InputError("sector_angle: multiplicity must be at least 2");
    if (n < 1)
        throw InputError("sector_angle: n must be positive");
    if (k == 2)
        return pi / 2;
    if (n == 1)
        throw DomainError("sector_angle: n = 1 only has double points");
    double beta = pi * (n - 1) / n;
    if (!(beta > (k - 2) * pi / k))
        throw DomainError("no regular spherical " + std::to_string(k) + "-gon has angle pi(n-1)/n for n = " +
                          std::to_string(n));
    return spherical::regular_edge(k, beta) / 2;
}

SectorModel sector_model(int n, int k_max)
{
    SectorModel m;
    m.n = n;
    m.cone_angle_per_line = 2 * pi * (n - 1) / n;
    for (int k = 2; k <= k_max; ++k) {
        try {
            m.alpha[k] = sector_angle(k, n);
        } catch (const DomainError&) {
        }
    }
    return m;
}

TriangleShape triangle_shape(int n, int d, double tol)
{
    if (d < 3)
        throw InputError("triangle_shape: d must be at least 3");
    TriangleShape t;
    t.angles = {pi / 2, sector_angle(3, n), sector_angle(d, n)};
    t.residual = t.angles[0] + t.angles[1] + t.angles[2] - pi;
    t.flat = std::abs(t.residual) < tol;
    return t;
}

ConsistencyResult solve_consistency(int d_min, int d_max, int n_max, double tol)
{
    if (d_min < 3 || d_max < d_min || n_max < 2)
        throw InputError("solve_consistency: need 3 <= d_min <= d_max and n_max >= 2");
    ConsistencyResult r;
    r.min_nonsolution_residual = std::numeric_limits<double>::infinity();
    for (int d = d_min; d <= d_max; ++d) {
        for (int n = 2; n <= n_max; ++n) {
            ConsistencyCell c;
            c.d = d;
            c.n = n;
            c.admissible = d < 2 * n;
            if (c.admissible) {
                c.residual = triangle_shape(n, d, tol).residual;
                c.solution = std::abs(c.residual) < tol;
                if (c.solution) {
                    double lhs = std::cos(pi / (2 * n));
                    double rhs = std::cos(pi / d);
                    c.identity_residual = lhs * lhs - 0.25 - rhs * rhs;
                    r.solutions.emplace_back(d, n);
                    r.max_solution_residual = std::max(r.max_solution_residual, std::abs(c.residual));
                    r.max_identity_residual = std::max(r.max_identity_residual, std::abs(c.identity_residual));
                } else {
                    r.min_nonsolution_residual = std::min(r.min_nonsolution_residual, std::abs(c.residual));
                }
            }
            r.cells.push_back(c);
        }
    }
    return r;
}

MetricReport verify_metric(const Arrangement& arr, std::optional<int> n_override, double tol)
{
    if (!arr.is_real())
        throw InputError("verify_metric needs a real arrangement");
    auto lattice = intersection_lattice(arr);
    auto hz = hirzebruch_check(lattice, arr.size());
    if (!hz.pass)
        throw InputError("verify_metric needs a Hirzebruch arrangement: " + hz.reason);
    int n = n_override.value_or(*hz.n);
    if (n < 2)
        throw InputError("verify_metric needs n >= 2");
    auto cx = cell_complex(arr, lattice);

    MetricReport r;
    r.n = n;
    std::map<int, double> alpha;
    bool alpha_ok = true;
    for (int mu : cx.multiplicity) {
        if (alpha.count(mu))
            continue;
        try {
            alpha[mu] = sector_angle(mu, n);
        } catch (const DomainError& e) {
            alpha[mu] = std::numeric_limits<double>::quiet_NaN();
            alpha_ok = false;
            r.diagnostics.push_back("no sector angle for multiplicity " + std::to_string(mu) + ": " + e.what());
        }
    }

    bool simplicial = true;
    for (std::size_t f = 0; f < cx.faces.size(); ++f) {
        const auto& face = cx.faces[f];
        if (face.vertices.size() != 3) {
            simplicial = false;
            r.diagnostics.push_back("face " + std::to_string(f) + " is not a triangle");
            r.faces.emplace_back();
            continue;
        }
        FaceReport fr;
        for (std::size_t i = 0; i < 3; ++i) {
            fr.vertices[i] = face.vertices[i];
            fr.multiplicities[i] = cx.multiplicity[static_cast<std::size_t>(face.vertices[i])];
            fr.angles[i] = alpha[fr.multiplicities[i]];
        }
        fr.angle_sum = fr.angles[0] + fr.angles[1] + fr.angles[2];
        auto type = fr.multiplicities;
        std::sort(type.begin(), type.end());
        if (r.face_types[type]++ == 0) {
            std::array<double, 3> deg{};
            for (std::size_t i = 0; i < 3; ++i)
                deg[i] = degrees(alpha[type[2 - i]]);
            std::sort(deg.begin(), deg.end(), std::greater<>());
            r.angle_triples_degrees.push_back(deg);
        }
        r.faces.push_back(fr);
    }

    // (a) flat faces
    r.angle_sums_ok = simplicial && alpha_ok;
    for (std::size_t f = 0; f < r.faces.size() && simplicial; ++f) {
        r.face_angle_total += r.faces[f].angle_sum;
        if (!(std::abs(r.faces[f].angle_sum - pi) < tol)) {
            r.angle_sums_ok = false;
            r.diagnostics.push_back("face " + std::to_string(f) + " has angle sum " +
                                    std::to_string(r.faces[f].angle_sum));
        }
    }

    // (b) one global scale: propagate side lengths (law of sines) across edges
    r.isometric = simplicial && alpha_ok && r.face_types.size() == 1;
    if (r.isometric) {
        auto opposite = [&](std::size_t f, int edge) {
            const auto& face = cx.faces[f];
            for (std::size_t i = 0; i < 3; ++i)
                if (face.edges[i] == edge)
                    return std::sin(r.faces[f].angles[(i + 2) % 3]);
            return std::numeric_limits<double>::quiet_NaN();
        };
        std::vector<char> seen(cx.faces.size(), 0);
        std::deque<std::size_t> queue{0};
        seen[0] = 1;
        r.faces[0].scale = 1;
        while (!queue.empty()) {
            std::size_t f = queue.front();
            queue.pop_front();
            for (int e : cx.faces[f].edges) {
                double len = r.faces[f].scale * opposite(f, e);
                const auto& fs = cx.edges[static_cast<std::size_t>(e)].faces;
                std::size_t g = static_cast<std::size_t>(fs[0]) == f ? static_cast<std::size_t>(fs[1])
                                                                      : static_cast<std::size_t>(fs[0]);
                double sg = len / opposite(g, e);
                if (!seen[g]) {
                    seen[g] = 1;
                    r.faces[g].scale = sg;
                    queue.push_back(g);
                } else if (!(std::abs(sg - r.faces[g].scale) < tol)) {
                    r.isometric = false;
                    r.diagnostics.push_back("edge " + std::to_string(e) + " gets inconsistent lengths");
                }
            }
        }
        for (std::size_t f = 0; f < r.faces.size(); ++f) {
            if (!seen[f] || !(std::abs(r.faces[f].scale - 1) < tol)) {
                r.isometric = false;
                r.diagnostics.push_back("face " + std::to_string(f) + " has a different scale");
            }
        }
    } else if (r.face_types.size() > 1) {
        r.diagnostics.push_back("faces have " + std::to_string(r.face_types.size()) + " different types");
    }

    // (c) cone angles and (d) total curvature
    r.cone_angles_ok = simplicial && alpha_ok;
    r.vertices.resize(static_cast<std::size_t>(cx.vertex_count()));
    for (std::size_t f = 0; f < r.faces.size() && simplicial; ++f) {
        for (std::size_t i = 0; i < 3; ++i) {
            auto& vr = r.vertices[static_cast<std::size_t>(r.faces[f].vertices[i])];
            vr.corners += 1;
            vr.cone_angle += r.faces[f].angles[i];
        }
    }
    for (int v = 0; v < cx.vertex_count(); ++v) {
        auto& vr = r.vertices[static_cast<std::size_t>(v)];
        vr.multiplicity = cx.multiplicity[static_cast<std::size_t>(v)];
        vr.expected = 2 * vr.multiplicity * alpha[vr.multiplicity];
        r.cone_angle_total += vr.cone_angle;
        r.total_curvature += 2 * pi - vr.cone_angle;
        bool ok = vr.corners == 2 * vr.multiplicity && std::abs(vr.cone_angle - vr.expected) < tol &&
                  (vr.multiplicity == 2 ? std::abs(vr.cone_angle - 2 * pi) < tol : vr.cone_angle < 2 * pi);
        if (!ok && r.cone_angles_ok)
            r.diagnostics.push_back("vertex " + std::to_string(v) + " has cone angle " + std::to_string(vr.cone_angle));
        r.cone_angles_ok = r.cone_angles_ok && ok;
    }
    r.curvature_ok = simplicial && alpha_ok && std::abs(r.total_curvature - 2 * pi) < tol;
    if (!r.curvature_ok && simplicial && alpha_ok)
        r.diagnostics.push_back("total curvature is " + std::to_string(r.total_curvature));
    r.pass = r.angle_sums_ok && r.isometric && r.cone_angles_ok && r.curvature_ok;
    return r;
}

} // namespace hirz::flat
