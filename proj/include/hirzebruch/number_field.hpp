#pragma once

#include "hirzebruch/rational.hpp"

#include <complex>
#include <compare>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hirz {

class NumberField;
class FieldElement;
using FieldHandle = std::shared_ptr<const NumberField>;

/// Default cap on interval refinement, in bits of the generator enclosure.
inline constexpr int default_bit_budget = 1024;

/// How irreducibility of the defining polynomial was established.
enum class Irreducibility {
    verified,   ///< degree <= 3 with no rational root, or degree 1
    cyclotomic, ///< equal to a cyclotomic polynomial
    trusted     ///< accepted without proof
};

std::string to_string(Irreducibility);

/// Closed rational interval [lo, hi] enclosing a real number.
struct CertifiedReal {
    Rational lo;
    Rational hi;

    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    /// +1 / -1 when the interval excludes zero, 0 otherwise.
    int sign_if_decided() const;
    double midpoint() const;
    Rational width() const { return hi - lo; }
};

/// Declaration of a number field Q[x]/(min_poly) together with a chosen
/// complex embedding of the generator and a field involution.
struct FieldSpec {
    std::string name;
    std::vector<Rational> min_poly;      ///< monic, lowest degree first
    std::complex<double> embedding_hint; ///< approximate value of the generator
    double hint_radius = 1e-9;           ///< hint is within this distance of the root
    std::vector<Rational> involution;    ///< image of the generator, coefficient vector
};

/// Q[x]/(p) with a certified embedding. Construct through `make_field`; the
/// object is immutable afterwards.
class NumberField {
public:
    const std::string& name() const { return name_; }
    int degree() const { return degree_; }
    const std::vector<Rational>& min_poly() const { return min_poly_; }
    std::complex<double> embedding_hint() const { return hint_; }
    double hint_radius() const { return hint_radius_; }
    const std::vector<Rational>& involution_image() const { return involution_; }
    Irreducibility irreducibility() const { return irreducibility_; }

    /// True when the chosen root of min_poly is real.
    bool has_real_embedding() const { return real_; }

    /// Floating approximation of the embedded generator.
    std::complex<double> generator_value() const { return root_; }

    /// Enclosure of the real generator of width <= 2^-bits. Real fields only.
    CertifiedReal generator_enclosure(int bits) const;

    /// Same min_poly and same embedded root.
    bool same_as(const NumberField& other) const;

    FieldSpec spec() const;

private:
    friend FieldHandle make_field(const FieldSpec&);
    friend class FieldElement;

    NumberField() = default;

    std::string name_;
    int degree_ = 0;
    std::vector<Rational> min_poly_;
    std::complex<double> hint_;
    double hint_radius_ = 0;
    std::vector<Rational> involution_;
    Irreducibility irreducibility_ = Irreducibility::trusted;
    bool real_ = false;
    std::complex<double> root_;
    CertifiedReal base_enclosure_; // width <= 2^-64 when real
    // x^d, ..., x^(2d-2) reduced modulo min_poly
    std::vector<std::vector<Rational>> reduced_powers_;
};

/// Validates the declaration and builds the field. Throws InputError when
/// min_poly is not monic, the hint does not isolate a root, or the involution
/// is not an automorphism of order dividing two.
FieldHandle make_field(const FieldSpec& spec);

/// Q itself, presented as Q[x]/(x).
FieldHandle rational_field();

/// Q(zeta_m) with zeta_m embedded as exp(2 pi i / m) and complex conjugation
/// as the involution. m = 1, 2 give Q.
FieldHandle cyclotomic_field(int m);

/// Q(sqrt(d)) for a non-square positive integer d, sqrt(d) > 0.
FieldHandle real_quadratic_field(int d);

/// An element of a number field in reduced form: `coeffs()` has exactly
/// `degree` entries and represents sum c_i * theta^i.
class FieldElement {
public:
    FieldElement() = default;
    explicit FieldElement(FieldHandle field);
    FieldElement(FieldHandle field, std::vector<Rational> coeffs);

    static FieldElement from_rational(FieldHandle field, const Rational& value);
    static FieldElement generator(FieldHandle field);

    const NumberField& field() const { return *field_; }
    const FieldHandle& handle() const { return field_; }
    std::span<const Rational> coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& rhs);
    FieldElement& operator-=(const FieldElement& rhs);
    FieldElement& operator*=(const FieldElement& rhs);
    FieldElement& operator/=(const FieldElement& rhs);

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

    /// Exact equality; throws DomainError for elements of different fields.
    friend bool operator==(const FieldElement& a, const FieldElement& b);

    /// Lexicographic order on coefficients. Representation order only, used
    /// for keys; it has no arithmetic meaning.
    friend std::strong_ordering repr_compare(const FieldElement& a, const FieldElement& b);

    FieldElement inverse() const;

    /// Image under the field involution.
    FieldElement conjugate() const;

    /// Enclosure of the real embedding at the given generator precision.
    CertifiedReal enclose(int bits) const;

    /// Floating value under the embedding.
    std::complex<double> approx() const;

private:
    void check_same_field(const FieldElement& other) const;

    FieldHandle field_;
    std::vector<Rational> coeffs_;
};

/// Sign of the real embedding: 0 only for the exact zero. Throws DomainError
/// for fields without a real embedding and PrecisionError when `max_bits` of
/// generator precision do not separate the value from zero.
int real_sign(const FieldElement& x, int max_bits = default_bit_budget);

/// Sign of (a - b) under the real embedding.
int real_compare(const FieldElement& a, const FieldElement& b, int max_bits = default_bit_budget);

} // namespace hirz
