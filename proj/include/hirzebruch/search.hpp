#pragma once

#include "hirzebruch/arrangement.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hirz::search {

/// Incidence structure of 3n (pseudo)lines, optionally with the cyclic order
/// of the points along every line.
struct CombinatorialType {
    int line_count = 0;
    std::vector<std::vector<int>> points;      ///< sorted incident lines per point
    std::vector<std::vector<int>> line_orders; ///< cyclic point order per line; empty when unknown
    TProfile t_profile() const;
    bool has_orders() const { return !line_orders.empty(); }
};

/// Relabeling-invariant normal form: the lexicographically smallest encoding
/// over all line labelings reachable by individualization and refinement.
/// With `with_orders` the per-line cyclic orders (up to rotation and
/// reversal) are part of the form.
std::vector<int> canonical_form(const CombinatorialType& type, bool with_orders);

/// The type of an arrangement; orders are filled in for real arrangements.
CombinatorialType type_of(const Arrangement& arr);

/// True iff the incidence structures are isomorphic.
bool iso_match(const CombinatorialType& type, const Arrangement& arr);

/// Nonnegative solutions of sum k t_k = 3n(n+1), sum C(k,2) t_k = C(3n,2)
/// with 2 <= k <= k_max.
std::vector<TProfile> t_profile_solver(int n, int k_max = 5);

enum class Mode { counting_only, paper_pruned };
std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

struct SearchOptions {
    int jobs = 1;
    std::optional<std::uint64_t> node_budget;
};

struct FoundType {
    CombinatorialType type;
    std::vector<int> canonical;           ///< with orders
    std::vector<int> incidence_canonical; ///< incidence only
};

struct ProfileStatus {
    TProfile profile;
    int types_found = 0;
    std::string status; ///< "found", "no wiring diagram found" or "pruned"
};

struct SearchResult {
    int n = 0;
    Mode mode = Mode::counting_only;
    int k_max = 0;
    std::uint64_t nodes = 0;
    std::uint64_t completions = 0; ///< wiring diagrams reaching the reversed order
    bool budget_exhausted = false;
    std::vector<FoundType> types;  ///< sorted by canonical form
    std::vector<ProfileStatus> profiles;
};

/// Exhaustive enumeration of projective wiring diagrams of 3n pseudolines in
/// which every line carries exactly n+1 multiple points, up to isomorphism.
/// paper_pruned additionally applies the structural rules for straight-line
/// arrangements (n >= 2): multiplicity <= 5, no adjacent double points, no
/// edge between points of multiplicity >= 4, triangular faces of types
/// (2,3,3), (2,3,4), (2,3,5).
SearchResult enumerate_types(int n, Mode mode, const SearchOptions& options = {});

} // namespace hirz::search
