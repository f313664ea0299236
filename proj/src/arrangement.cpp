#include "hirzebruch/arrangement.hpp"

#include "hirzebruch/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hirz {

Arrangement::Arrangement(FieldHandle field, std::vector<ProjLine> lines, std::string name)
    : field_(std::move(field)), lines_(std::move(lines)), name_(std::move(name))
{
    std::set<ProjLine> seen;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
        const auto& l = lines_[i];
        if (l.field() != field_ && !l.field()->same_as(*field_))
            throw InputError("line " + std::to_string(i) + " is defined over a different field");
        if (!seen.insert(l).second)
            throw InputError("duplicate line at index " + std::to_string(i));
        if (!l.is_real())
            real_ = false;
    }
}

Arrangement Arrangement::conjugate() const
{
    std::vector<ProjLine> out;
    out.reserve(lines_.size());
    for (const auto& l : lines_)
        out.push_back(l.conjugate());
    return Arrangement{field_, std::move(out), name_};
}

IntersectionLattice intersection_lattice(const Arrangement& arr)
{
    if (arr.size() < 2)
        throw InputError("an intersection lattice needs at least two lines");
    IntersectionLattice lat;
    std::map<ProjPoint, int> index;
    const auto& lines = arr.lines();
    for (int i = 0; i < arr.size(); ++i) {
        for (int j = i + 1; j < arr.size(); ++j) {
            ProjPoint p = meet(lines[static_cast<std::size_t>(i)], lines[static_cast<std::size_t>(j)]);
            auto [it, inserted] = index.try_emplace(p, static_cast<int>(lat.points.size()));
            if (inserted)
                lat.points.push_back(MultiplePoint{p, 0, {}});
            auto& lst = lat.points[static_cast<std::size_t>(it->second)].lines;
            for (int l : {i, j})
                if (std::find(lst.begin(), lst.end(), l) == lst.end())
                    lst.push_back(l);
        }
    }
    lat.per_line.assign(static_cast<std::size_t>(arr.size()), {});
    for (std::size_t p = 0; p < lat.points.size(); ++p) {
        auto& mp = lat.points[p];
        std::sort(mp.lines.begin(), mp.lines.end());
        mp.multiplicity = static_cast<int>(mp.lines.size());
        lat.t_profile[mp.multiplicity] += 1;
        for (int l : mp.lines)
            lat.per_line[static_cast<std::size_t>(l)].push_back(static_cast<int>(p));
    }
    return lat;
}

HirzebruchResult hirzebruch_check(const IntersectionLattice& lattice, int line_count)
{
    HirzebruchResult r;
    for (const auto& pts : lattice.per_line)
        r.per_line_counts.push_back(static_cast<int>(pts.size()));
    if (line_count % 3 != 0) {
        r.reason = "line count not 3n";
        return r;
    }
    int n = line_count / 3;
    for (std::size_t i = 0; i < r.per_line_counts.size(); ++i) {
        if (r.per_line_counts[i] != n + 1) {
            r.reason = "line " + std::to_string(i) + " meets the others in " + std::to_string(r.per_line_counts[i]) +
                       " points, expected " + std::to_string(n + 1);
            return r;
        }
    }
    r.pass = true;
    r.n = n;
    return r;
}

HirzebruchResult hirzebruch_check(const Arrangement& arr)
{
    if (arr.size() < 2) {
        HirzebruchResult r;
        r.per_line_counts.assign(static_cast<std::size_t>(arr.size()), 0);
        r.reason = "line count not 3n";
        return r;
    }
    return hirzebruch_check(intersection_lattice(arr), arr.size());
}

CountingIdentities counting_identities(const TProfile& t_profile, int n)
{
    CountingIdentities c;
    for (auto [k, t] : t_profile) {
        c.sum_k_tk += static_cast<long long>(k) * t;
        c.pairs += static_cast<long long>(k) * (k - 1) / 2 * t;
    }
    long long lines = 3LL * n;
    c.expected_sum_k_tk = lines * (n + 1);
    c.expected_pairs = lines * (lines - 1) / 2;
    c.sum_k_tk_ok = c.sum_k_tk == c.expected_sum_k_tk;
    c.pairs_ok = c.pairs == c.expected_pairs;
    return c;
}

// ---------------------------------------------------------------------------

namespace {

using Vec3 = std::array<FieldElement, 3>;

Vec3 negate(const Vec3& v)
{
    return {-v[0], -v[1], -v[2]};
}

// Sorts vectors lying in the plane orthogonal to `axis` counter-clockwise as
// seen from the tip of `axis`, starting at vectors[order[0]].
std::vector<int> angular_order(const Vec3& axis, const std::vector<Vec3>& vectors, int max_bits)
{
    const Vec3& u = vectors.front();
    Vec3 w = cross(axis, u);
    struct Key {
        FieldElement pu, pw;
        int half;
    };
    std::vector<Key> keys;
    keys.reserve(vectors.size());
    for (const auto& v : vectors) {
        FieldElement pu = dot(v, u), pw = dot(v, w);
        int sw = real_sign(pw, max_bits);
        int half = (sw > 0 || (sw == 0 && real_sign(pu, max_bits) > 0)) ? 0 : 1;
        keys.push_back({pu, pw, half});
    }
    std::vector<int> order(vectors.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Key& ka = keys[static_cast<std::size_t>(a)];
        const Key& kb = keys[static_cast<std::size_t>(b)];
        if (ka.half != kb.half)
            return ka.half < kb.half;
        if (a == b)
            return false;
        return real_sign(ka.pu * kb.pw - ka.pw * kb.pu, max_bits) > 0;
    });
    return order;
}

} // namespace

CellComplex cell_complex(const Arrangement& arr, const IntersectionLattice& lattice, int max_bits)
{
    if (!arr.is_real())
        throw InputError("cell complex needs a real arrangement");
    if (!arr.field()->has_real_embedding())
        throw InputError("cell complex needs a field with a real embedding");

    const int P = static_cast<int>(lattice.points.size());
    const int L = arr.size();

    // Sphere vertex 2p is the canonical lift of point p, 2p+1 its antipode.
    std::vector<Vec3> sphere(static_cast<std::size_t>(2 * P));
    for (int p = 0; p < P; ++p) {
        sphere[static_cast<std::size_t>(2 * p)] = lattice.points[static_cast<std::size_t>(p)].point.coords();
        sphere[static_cast<std::size_t>(2 * p + 1)] = negate(sphere[static_cast<std::size_t>(2 * p)]);
    }

    // Order the lifts on each great circle, counter-clockwise about the normal.
    std::vector<std::vector<int>> circle(static_cast<std::size_t>(L));
    std::vector<int> dart_offset(static_cast<std::size_t>(L) + 1, 0);
    for (int i = 0; i < L; ++i) {
        const auto& normal = arr.lines()[static_cast<std::size_t>(i)].coords();
        std::vector<int> verts;
        for (int p : lattice.per_line[static_cast<std::size_t>(i)]) {
            verts.push_back(2 * p);
            verts.push_back(2 * p + 1);
        }
        std::vector<Vec3> vecs;
        for (int v : verts)
            vecs.push_back(sphere[static_cast<std::size_t>(v)]);
        auto order = angular_order(normal, vecs, max_bits);
        for (int o : order)
            circle[static_cast<std::size_t>(i)].push_back(verts[static_cast<std::size_t>(o)]);
        dart_offset[static_cast<std::size_t>(i) + 1] =
            dart_offset[static_cast<std::size_t>(i)] + 2 * static_cast<int>(verts.size());
    }

    // Darts: id = offset + 2k + dir, k = position on the circle; dir 0 runs
    // from circle[k] to circle[k+1], dir 1 is its reverse.
    const int D = dart_offset.back();
    std::vector<int> dart_from(static_cast<std::size_t>(D)), dart_to(static_cast<std::size_t>(D)),
        dart_line(static_cast<std::size_t>(D)), dart_pos(static_cast<std::size_t>(D));
    for (int i = 0; i < L; ++i) {
        const auto& c = circle[static_cast<std::size_t>(i)];
        int m2 = static_cast<int>(c.size());
        for (int k = 0; k < m2; ++k) {
            int a = c[static_cast<std::size_t>(k)], b = c[static_cast<std::size_t>((k + 1) % m2)];
            int id = dart_offset[static_cast<std::size_t>(i)] + 2 * k;
            dart_from[static_cast<std::size_t>(id)] = a;
            dart_to[static_cast<std::size_t>(id)] = b;
            dart_from[static_cast<std::size_t>(id + 1)] = b;
            dart_to[static_cast<std::size_t>(id + 1)] = a;
            for (int d : {id, id + 1}) {
                dart_line[static_cast<std::size_t>(d)] = i;
                dart_pos[static_cast<std::size_t>(d)] = k;
            }
        }
    }
    auto antipodal_dart = [&](int d) {
        int i = dart_line[static_cast<std::size_t>(d)];
        int m2 = static_cast<int>(circle[static_cast<std::size_t>(i)].size());
        int k = (dart_pos[static_cast<std::size_t>(d)] + m2 / 2) % m2;
        return dart_offset[static_cast<std::size_t>(i)] + 2 * k + (d - dart_offset[static_cast<std::size_t>(i)]) % 2;
    };

    // Rotation system at each sphere vertex.
    std::vector<std::vector<int>> outgoing(static_cast<std::size_t>(2 * P));
    for (int d = 0; d < D; ++d)
        outgoing[static_cast<std::size_t>(dart_from[static_cast<std::size_t>(d)])].push_back(d);
    std::vector<int> ccw_next(static_cast<std::size_t>(D)), ccw_prev(static_cast<std::size_t>(D));
    std::vector<std::vector<int>> rotation_sphere(static_cast<std::size_t>(2 * P));
    for (int v = 0; v < 2 * P; ++v) {
        const Vec3& x = sphere[static_cast<std::size_t>(v)];
        std::vector<Vec3> tangents;
        for (int d : outgoing[static_cast<std::size_t>(v)]) {
            Vec3 t = cross(arr.lines()[static_cast<std::size_t>(dart_line[static_cast<std::size_t>(d)])].coords(), x);
            // the forward direction along a circle is normal x point
            bool forward = (d - dart_offset[static_cast<std::size_t>(dart_line[static_cast<std::size_t>(d)])]) % 2 == 0;
            tangents.push_back(forward ? t : negate(t));
        }
        auto order = angular_order(x, tangents, max_bits);
        auto& rot = rotation_sphere[static_cast<std::size_t>(v)];
        for (int o : order)
            rot.push_back(outgoing[static_cast<std::size_t>(v)][static_cast<std::size_t>(o)]);
        for (std::size_t k = 0; k < rot.size(); ++k) {
            ccw_next[static_cast<std::size_t>(rot[k])] = rot[(k + 1) % rot.size()];
            ccw_prev[static_cast<std::size_t>(rot[k])] = rot[(k + rot.size() - 1) % rot.size()];
        }
    }

    // Faces of the sphere arrangement: the face left of d continues with the
    // dart preceding reverse(d) in the rotation at its head.
    std::vector<int> sphere_face(static_cast<std::size_t>(D), -1);
    std::vector<std::vector<int>> sphere_faces;
    for (int d0 = 0; d0 < D; ++d0) {
        if (sphere_face[static_cast<std::size_t>(d0)] >= 0)
            continue;
        int f = static_cast<int>(sphere_faces.size());
        sphere_faces.emplace_back();
        int d = d0;
        do {
            sphere_face[static_cast<std::size_t>(d)] = f;
            sphere_faces.back().push_back(d);
            d = ccw_prev[static_cast<std::size_t>(d ^ 1)];
        } while (d != d0);
    }
    if (2 * P - D / 2 + static_cast<int>(sphere_faces.size()) != 2)
        throw DomainError("sphere arrangement violates Euler's formula; the rotation system is inconsistent");

    // Quotient by the antipodal map.
    CellComplex cx;
    cx.multiplicity.resize(static_cast<std::size_t>(P));
    for (int p = 0; p < P; ++p)
        cx.multiplicity[static_cast<std::size_t>(p)] = lattice.points[static_cast<std::size_t>(p)].multiplicity;

    std::vector<int> rp_edge(static_cast<std::size_t>(D), -1);
    for (int i = 0; i < L; ++i) {
        const auto& c = circle[static_cast<std::size_t>(i)];
        int half = static_cast<int>(c.size()) / 2;
        for (int k = 0; k < half; ++k) {
            int e = static_cast<int>(cx.edges.size());
            int d = dart_offset[static_cast<std::size_t>(i)] + 2 * k;
            int ad = antipodal_dart(d);
            for (int x : {d, d + 1, ad, ad + 1})
                rp_edge[static_cast<std::size_t>(x)] = e;
            CellEdge edge;
            edge.line = i;
            edge.ends = {dart_from[static_cast<std::size_t>(d)] / 2, dart_to[static_cast<std::size_t>(d)] / 2};
            cx.edges.push_back(edge);
        }
        std::vector<int> order;
        for (int k = 0; k < half; ++k)
            order.push_back(c[static_cast<std::size_t>(k)] / 2);
        cx.line_order.push_back(std::move(order));
    }

    std::vector<int> rp_face_of_sphere(sphere_faces.size(), -1);
    for (std::size_t f = 0; f < sphere_faces.size(); ++f) {
        if (rp_face_of_sphere[f] >= 0)
            continue;
        // the antipodal map reverses orientation, so the image of the face
        // left of d lies right of the antipodal dart
        int af = sphere_face[static_cast<std::size_t>(antipodal_dart(sphere_faces[f].front()) ^ 1)];
        if (static_cast<std::size_t>(af) == f)
            throw DomainError("a face is mapped to itself by the antipodal map");
        int id = static_cast<int>(cx.faces.size());
        rp_face_of_sphere[f] = id;
        rp_face_of_sphere[static_cast<std::size_t>(af)] = id;
        CellFace face;
        for (int d : sphere_faces[f]) {
            face.vertices.push_back(dart_from[static_cast<std::size_t>(d)] / 2);
            face.edges.push_back(rp_edge[static_cast<std::size_t>(d)]);
        }
        cx.faces.push_back(std::move(face));
    }

    for (int i = 0; i < L; ++i) {
        int half = static_cast<int>(circle[static_cast<std::size_t>(i)].size()) / 2;
        for (int k = 0; k < half; ++k) {
            int d = dart_offset[static_cast<std::size_t>(i)] + 2 * k;
            auto& edge = cx.edges[static_cast<std::size_t>(rp_edge[static_cast<std::size_t>(d)])];
            edge.faces = {rp_face_of_sphere[static_cast<std::size_t>(sphere_face[static_cast<std::size_t>(d)])],
                          rp_face_of_sphere[static_cast<std::size_t>(sphere_face[static_cast<std::size_t>(d + 1)])]};
        }
    }

    cx.rotation.resize(static_cast<std::size_t>(P));
    for (int p = 0; p < P; ++p) {
        for (int d : rotation_sphere[static_cast<std::size_t>(2 * p)]) {
            cx.rotation[static_cast<std::size_t>(p)].push_back(
                Dart{rp_edge[static_cast<std::size_t>(d)], dart_to[static_cast<std::size_t>(d)] / 2,
                     rp_face_of_sphere[static_cast<std::size_t>(sphere_face[static_cast<std::size_t>(d)])]});
        }
    }
    return cx;
}

CellComplex cell_complex(const Arrangement& arr)
{
    return cell_complex(arr, intersection_lattice(arr));
}

Star star(const CellComplex& complex, int vertex)
{
    if (vertex < 0 || vertex >= complex.vertex_count())
        throw InputError("unknown vertex " + std::to_string(vertex));
    Star s;
    s.center = vertex;
    s.multiplicity = complex.multiplicity[static_cast<std::size_t>(vertex)];
    for (const auto& d : complex.rotation[static_cast<std::size_t>(vertex)]) {
        s.sectors.push_back(d.face);
        s.boundary.push_back(d.neighbor);
    }
    return s;
}

// ---------------------------------------------------------------------------

bool StructuralReport::all_pass() const
{
    if (degenerate_n1) {
        return simplicial && face_types.size() == 1 && face_types.begin()->first == std::array<int, 3>{2, 2, 2};
    }
    return simplicial && no_adjacent_double_points && max_multiplicity_le_5 && star_alternation &&
           face_types_allowed && no_edge_between_high && few_high_neighbors;
}

StructuralReport structural_predicates(const Arrangement& arr, const IntersectionLattice& lattice,
                                       const CellComplex& cx)
{
    auto hz = hirzebruch_check(lattice, arr.size());
    if (!hz.pass)
        throw InputError("structural predicates need a Hirzebruch arrangement: " + hz.reason);
    StructuralReport r;
    r.n = *hz.n;
    r.degenerate_n1 = r.n == 1;
    const auto& mu = cx.multiplicity;
    auto mu_of = [&](int v) { return mu[static_cast<std::size_t>(v)]; };

    r.simplicial = true;
    r.face_types_allowed = true;
    const std::set<std::array<int, 3>> allowed{{2, 3, 3}, {2, 3, 4}, {2, 3, 5}};
    for (std::size_t f = 0; f < cx.faces.size(); ++f) {
        const auto& face = cx.faces[f];
        if (face.vertices.size() != 3) {
            r.simplicial = false;
            r.face_types_allowed = false;
            r.diagnostics.push_back("face " + std::to_string(f) + " has " + std::to_string(face.vertices.size()) +
                                    " sides");
            continue;
        }
        std::array<int, 3> type{mu_of(face.vertices[0]), mu_of(face.vertices[1]), mu_of(face.vertices[2])};
        std::sort(type.begin(), type.end());
        r.face_types[type] += 1;
        if (!allowed.count(type))
            r.face_types_allowed = false;
    }

    r.no_adjacent_double_points = true;
    r.no_edge_between_high = true;
    std::set<std::pair<int, int>> adjacent;
    for (const auto& e : cx.edges) {
        int a = std::min(e.ends[0], e.ends[1]), b = std::max(e.ends[0], e.ends[1]);
        if (!adjacent.insert({a, b}).second)
            continue;
        if (mu_of(a) == 2 && mu_of(b) == 2) {
            r.no_adjacent_double_points = false;
            r.diagnostics.push_back("double points " + std::to_string(a) + " and " + std::to_string(b) +
                                    " are adjacent");
        }
        if (mu_of(a) >= 4 && mu_of(b) >= 4) {
            r.no_edge_between_high = false;
            r.diagnostics.push_back("points " + std::to_string(a) + " and " + std::to_string(b) +
                                    " of multiplicity >= 4 are adjacent");
        }
    }

    r.max_multiplicity_le_5 = std::all_of(mu.begin(), mu.end(), [](int m) { return m <= 5; });
    if (!r.max_multiplicity_le_5)
        r.diagnostics.push_back("multiplicity exceeds 5");

    r.star_alternation = true;
    r.few_high_neighbors = true;
    for (int v = 0; v < cx.vertex_count(); ++v) {
        Star s = star(cx, v);
        std::set<int> high;
        for (int p : s.boundary)
            if (mu_of(p) > 2 && p != v)
                high.insert(p);
        if (high.size() > 5) {
            r.few_high_neighbors = false;
            r.diagnostics.push_back("point " + std::to_string(v) + " has " + std::to_string(high.size()) +
                                    " neighbours of multiplicity > 2");
        }
        if (s.multiplicity != 4 && s.multiplicity != 5)
            continue;
        bool ok = false;
        for (int offset = 0; offset < 2 && !ok; ++offset) {
            ok = true;
            for (std::size_t i = 0; i < s.boundary.size(); ++i) {
                int want = ((i + static_cast<std::size_t>(offset)) % 2 == 0) ? 2 : 3;
                if (mu_of(s.boundary[i]) != want)
                    ok = false;
            }
        }
        if (!ok) {
            r.star_alternation = false;
            r.diagnostics.push_back("star of point " + std::to_string(v) + " does not alternate 2,3");
        }
    }
    return r;
}

StructuralReport structural_predicates(const Arrangement& arr)
{
    auto lattice = intersection_lattice(arr);
    auto cx = cell_complex(arr, lattice);
    return structural_predicates(arr, lattice, cx);
}

} // namespace hirz
