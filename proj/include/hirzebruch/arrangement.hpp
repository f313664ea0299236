#pragma once

#include "hirzebruch/projective.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hirz {

/// A finite set of pairwise distinct projective lines over one number field.
class Arrangement {
public:
    /// Throws InputError on duplicate lines or lines over a different field.
    Arrangement(FieldHandle field, std::vector<ProjLine> lines, std::string name = {});

    const FieldHandle& field() const { return field_; }
    const std::vector<ProjLine>& lines() const { return lines_; }
    int size() const { return static_cast<int>(lines_.size()); }
    const std::string& name() const { return name_; }

    /// Every line is fixed by the field involution.
    bool is_real() const { return real_; }

    /// Image of every line under the field involution.
    Arrangement conjugate() const;

private:
    FieldHandle field_;
    std::vector<ProjLine> lines_;
    std::string name_;
    bool real_ = true;
};

/// Multiplicity k -> number of points of multiplicity k.
using TProfile = std::map<int, int>;

struct MultiplePoint {
    ProjPoint point;
    int multiplicity = 0;
    std::vector<int> lines; ///< sorted line indices through the point
};

struct IntersectionLattice {
    std::vector<MultiplePoint> points;
    std::vector<std::vector<int>> per_line; ///< point indices on each line, ascending
    TProfile t_profile;
};

/// All multiple points with their incident lines. Needs at least two lines.
IntersectionLattice intersection_lattice(const Arrangement& arr);

struct HirzebruchResult {
    bool pass = false;
    std::optional<int> n;
    std::vector<int> per_line_counts;
    std::string reason; ///< empty on pass
};

HirzebruchResult hirzebruch_check(const IntersectionLattice& lattice, int line_count);
HirzebruchResult hirzebruch_check(const Arrangement& arr);

struct CountingIdentities {
    bool sum_k_tk_ok = false;
    bool pairs_ok = false;
    long long sum_k_tk = 0;
    long long expected_sum_k_tk = 0;
    long long pairs = 0;
    long long expected_pairs = 0;
};

/// Double-counting identities sum k t_k = 3n(n+1) and sum C(k,2) t_k = C(3n,2).
CountingIdentities counting_identities(const TProfile& t_profile, int n);

// ---------------------------------------------------------------------------
// Cell decomposition of RP^2 by a real arrangement

struct CellEdge {
    int line = -1;
    std::array<int, 2> ends{};  ///< point indices
    std::array<int, 2> faces{}; ///< the two faces on either side
};

struct CellFace {
    std::vector<int> vertices; ///< cyclic boundary, point indices
    std::vector<int> edges;    ///< edge i joins vertices[i] and vertices[i+1]
};

/// One outgoing direction at a vertex, in counter-clockwise order.
struct Dart {
    int edge = -1;
    int neighbor = -1; ///< point at the other end of the edge
    int face = -1;     ///< face between this dart and the next one
};

struct CellComplex {
    std::vector<int> multiplicity;            ///< per vertex (= lattice point)
    std::vector<CellEdge> edges;
    std::vector<CellFace> faces;
    std::vector<std::vector<int>> line_order; ///< cyclic order of points on each line
    std::vector<std::vector<Dart>> rotation;  ///< per vertex, 2*mu darts

    int vertex_count() const { return static_cast<int>(multiplicity.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int face_count() const { return static_cast<int>(faces.size()); }
    int euler_char() const { return vertex_count() - edge_count() + face_count(); }
};

/// Builds the cell complex. The arrangement must be real over a field with a
/// real embedding; throws InputError otherwise and PrecisionError when a sign
/// cannot be decided within `max_bits`.
CellComplex cell_complex(const Arrangement& arr, const IntersectionLattice& lattice,
                         int max_bits = default_bit_budget);
CellComplex cell_complex(const Arrangement& arr);

struct Star {
    int center = -1;
    int multiplicity = 0;
    std::vector<int> sectors;  ///< faces around the center, counter-clockwise
    std::vector<int> boundary; ///< P_1..P_{2 mu}: far ends of the edges at the center
};

/// Throws InputError for an unknown vertex.
Star star(const CellComplex& complex, int vertex);

struct StructuralReport {
    int n = 0;
    bool degenerate_n1 = false;
    bool simplicial = false;
    bool no_adjacent_double_points = false;
    bool max_multiplicity_le_5 = false;
    bool star_alternation = false;       ///< mu in {4,5} stars alternate 2,3
    bool face_types_allowed = false;     ///< (2,3,3), (2,3,4), (2,3,5)
    bool no_edge_between_high = false;   ///< no edge joins two points with mu >= 4
    bool few_high_neighbors = false;     ///< at most five neighbours with mu > 2
    std::map<std::array<int, 3>, int> face_types;
    std::vector<std::string> diagnostics;

    /// All predicates; for n = 1 only simpliciality and the (2,2,2) face type.
    bool all_pass() const;
};

/// The structural predicates of a real Hirzebruch arrangement. Throws
/// InputError when the arrangement fails the Hirzebruch check.
StructuralReport structural_predicates(const Arrangement& arr, const IntersectionLattice& lattice,
                                       const CellComplex& complex);
StructuralReport structural_predicates(const Arrangement& arr);

} // namespace hirz
