#pragma once

#include "hirzebruch/number_field.hpp"

#include <array>
#include <compare>

namespace hirz {

/// A homogeneous triple over a number field, kept in canonical form: the
/// first nonzero coordinate is 1. `Tag` separates points from lines.
template <class Tag>
class Homogeneous {
public:
    Homogeneous() = default;
    /// Throws InputError when all three coordinates are zero.
    explicit Homogeneous(std::array<FieldElement, 3> coords);

    const std::array<FieldElement, 3>& coords() const { return coords_; }
    const FieldElement& operator[](std::size_t i) const { return coords_[i]; }
    const FieldHandle& field() const { return coords_[0].handle(); }

    /// Fixed by the field involution.
    bool is_real() const;
    Homogeneous conjugate() const;

    friend bool operator==(const Homogeneous& a, const Homogeneous& b)
    {
        return a.coords_[0] == b.coords_[0] && a.coords_[1] == b.coords_[1] && a.coords_[2] == b.coords_[2];
    }
    friend std::strong_ordering operator<=>(const Homogeneous& a, const Homogeneous& b)
    {
        for (std::size_t i = 0; i < 3; ++i) {
            auto c = repr_compare(a.coords_[i], b.coords_[i]);
            if (c != 0)
                return c;
        }
        return std::strong_ordering::equal;
    }

private:
    std::array<FieldElement, 3> coords_;
};

struct PointTag {};
struct LineTag {};
using ProjPoint = Homogeneous<PointTag>;
using ProjLine = Homogeneous<LineTag>;

/// Plain cross product of coordinate triples.
std::array<FieldElement, 3> cross(const std::array<FieldElement, 3>& a, const std::array<FieldElement, 3>& b);
FieldElement dot(const std::array<FieldElement, 3>& a, const std::array<FieldElement, 3>& b);

/// Intersection of two distinct lines. Throws InputError for equal lines.
ProjPoint meet(const ProjLine& a, const ProjLine& b);
/// Line through two distinct points. Throws InputError for equal points.
ProjLine join(const ProjPoint& a, const ProjPoint& b);
bool incident(const ProjPoint& p, const ProjLine& l);

/// Convenience for rational triples.
ProjLine rational_line(const FieldHandle& field, long a, long b, long c);

} // namespace hirz
