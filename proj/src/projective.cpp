#include "hirzebruch/projective.hpp"

#include "hirzebruch/error.hpp"

namespace hirz {

template <class Tag>
Homogeneous<Tag>::Homogeneous(std::array<FieldElement, 3> coords) : coords_(std::move(coords))
{
    std::size_t lead = 0;
    while (lead < 3 && coords_[lead].is_zero())
        ++lead;
    if (lead == 3)
        throw InputError("homogeneous coordinates are all zero");
    if (!coords_[lead].is_one()) {
        FieldElement inv = coords_[lead].inverse();
        for (std::size_t i = lead; i < 3; ++i)
            coords_[i] *= inv;
    }
}

template <class Tag>
bool Homogeneous<Tag>::is_real() const
{
    return conjugate() == *this;
}

template <class Tag>
Homogeneous<Tag> Homogeneous<Tag>::conjugate() const
{
    return Homogeneous{{coords_[0].conjugate(), coords_[1].conjugate(), coords_[2].conjugate()}};
}

template class Homogeneous<PointTag>;
template class Homogeneous<LineTag>;

std::array<FieldElement, 3> cross(const std::array<FieldElement, 3>& a, const std::array<FieldElement, 3>& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

FieldElement dot(const std::array<FieldElement, 3>& a, const std::array<FieldElement, 3>& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

ProjPoint meet(const ProjLine& a, const ProjLine& b)
{
    auto c = cross(a.coords(), b.coords());
    if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero())
        throw InputError("meet of identical lines");
    ProjPoint p{c};
    if (!incident(p, a) || !incident(p, b))
        throw DomainError("meet failed the incidence check");
    return p;
}

ProjLine join(const ProjPoint& a, const ProjPoint& b)
{
    auto c = cross(a.coords(), b.coords());
    if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero())
        throw InputError("join of identical points");
    ProjLine l{c};
    if (!incident(a, l) || !incident(b, l))
        throw DomainError("join failed the incidence check");
    return l;
}

bool incident(const ProjPoint& p, const ProjLine& l)
{
    return dot(p.coords(), l.coords()).is_zero();
}

ProjLine rational_line(const FieldHandle& field, long a, long b, long c)
{
    return ProjLine{{FieldElement::from_rational(field, a), FieldElement::from_rational(field, b),
                     FieldElement::from_rational(field, c)}};
}

} // namespace hirz
