#include "hirzebruch/number_field.hpp"

#include "hirzebruch/error.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hirz {

std::string to_string(Irreducibility irr)
{
    switch (irr) {
    case Irreducibility::verified:
        return "verified";
    case Irreducibility::cyclotomic:
        return "cyclotomic";
    case Irreducibility::trusted:
        return "trusted";
    }
    return "trusted";
}

int CertifiedReal::sign_if_decided() const
{
    if (lo > 0)
        return 1;
    if (hi < 0)
        return -1;
    return 0;
}

double CertifiedReal::midpoint() const
{
    Rational mid = (lo + hi) / 2;
    return mid.get_d();
}

namespace {

std::vector<std::complex<double>> numeric_roots(const std::vector<Rational>& monic)
{
    int d = static_cast<int>(monic.size()) - 1;
    if (d == 1)
        return {std::complex<double>{-monic[0].get_d(), 0.0}};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i)
        companion(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i)
        companion(i, d - 1) = -monic[static_cast<std::size_t>(i)].get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<std::complex<double>> out;
    for (int i = 0; i < d; ++i)
        out.push_back(solver.eigenvalues()[i]);
    return out;
}

Rational dyadic_from_double(double x)
{
    // mpq from a double is exact and dyadic
    return Rational{x};
}

bool has_rational_root(const std::vector<Rational>& monic, const std::vector<std::complex<double>>& roots)
{
    if (monic[0] == 0)
        return true;
    Integer lcm = 1;
    for (const auto& c : monic)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    // leading coefficient of the integer polynomial is lcm; rational roots are p/q with q | lcm
    if (lcm > 1000000)
        return false; // caller downgrades to trusted
    long lead = lcm.get_si();
    for (const auto& r : roots) {
        if (std::abs(r.imag()) > 1e-6 * std::max(1.0, std::abs(r)))
            continue;
        for (long q = 1; q <= lead; ++q) {
            if (lead % q != 0)
                continue;
            double p = std::round(r.real() * static_cast<double>(q));
            for (double dp : {-1.0, 0.0, 1.0}) {
                Rational cand{Integer{p + dp}, Integer{q}};
                cand.canonicalize();
                if (poly::eval(monic, cand) == 0)
                    return true;
            }
        }
    }
    return false;
}

int euler_phi(int m)
{
    int result = m;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0)
                m /= p;
            result -= result / p;
        }
    }
    if (m > 1)
        result -= result / m;
    return result;
}

Irreducibility classify_irreducibility(const std::vector<Rational>& monic,
                                       const std::vector<std::complex<double>>& roots)
{
    int d = static_cast<int>(monic.size()) - 1;
    if (d == 1)
        return Irreducibility::verified;
    for (int m = 3; m <= 512; ++m) {
        if (euler_phi(m) != d)
            continue;
        if (poly::cyclotomic(m) == monic)
            return Irreducibility::cyclotomic;
    }
    if (d <= 3) {
        Integer lcm = 1;
        for (const auto& c : monic)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
        if (lcm > 1000000)
            return Irreducibility::trusted;
        if (has_rational_root(monic, roots))
            throw InputError("min_poly has a rational root, so it is reducible");
        return Irreducibility::verified;
    }
    return Irreducibility::trusted;
}

// Reduce a coefficient vector of arbitrary length modulo the monic polynomial.
std::vector<Rational> reduce_with(const std::vector<Rational>& monic, std::vector<Rational> c)
{
    std::size_t d = monic.size() - 1;
    for (std::size_t k = c.size(); k-- > d;) {
        if (c[k] == 0)
            continue;
        Rational lead = c[k];
        for (std::size_t i = 0; i < d; ++i)
            c[k - d + i] -= lead * monic[i];
        c[k] = 0;
    }
    c.resize(d);
    return c;
}

} // namespace

CertifiedReal NumberField::generator_enclosure(int bits) const
{
    if (!real_)
        throw DomainError("field '" + name_ + "' has no real embedding");
    if (degree_ == 1)
        return {-min_poly_[0], -min_poly_[0]};
    CertifiedReal iv = base_enclosure_;
    Rational target;
    mpq_set_ui(target.get_mpq_t(), 1, 1);
    mpq_div_2exp(target.get_mpq_t(), target.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
    int sign_lo = sgn(poly::eval(min_poly_, iv.lo));
    while (iv.width() > target) {
        Rational mid = (iv.lo + iv.hi) / 2;
        int s = sgn(poly::eval(min_poly_, mid));
        if (s == 0)
            return {mid, mid};
        if (s == sign_lo)
            iv.lo = mid;
        else
            iv.hi = mid;
    }
    return iv;
}

bool NumberField::same_as(const NumberField& other) const
{
    if (this == &other)
        return true;
    if (min_poly_ != other.min_poly_)
        return false;
    return std::abs(root_ - other.root_) < 1e-9 * std::max(1.0, std::abs(root_));
}

FieldSpec NumberField::spec() const
{
    return FieldSpec{name_, min_poly_, hint_, hint_radius_, involution_};
}

FieldHandle make_field(const FieldSpec& spec)
{
    std::vector<Rational> monic = spec.min_poly;
    for (auto& c : monic)
        c.canonicalize();
    poly::trim(monic);
    if (monic.size() < 2)
        throw InputError("min_poly must have degree >= 1");
    if (monic.back() != 1)
        throw InputError("min_poly must be monic");
    int d = static_cast<int>(monic.size()) - 1;

    auto field = std::shared_ptr<NumberField>(new NumberField());
    field->name_ = spec.name;
    field->degree_ = d;
    field->min_poly_ = monic;
    field->hint_ = spec.embedding_hint;
    field->hint_radius_ = spec.hint_radius;
    if (!(spec.hint_radius > 0) || !std::isfinite(spec.hint_radius))
        throw InputError("embedding hint radius must be positive");

    auto roots = numeric_roots(monic);
    field->irreducibility_ = classify_irreducibility(monic, roots);

    // The hint must single out one root.
    std::size_t best = 0;
    for (std::size_t i = 1; i < roots.size(); ++i)
        if (std::abs(roots[i] - spec.embedding_hint) < std::abs(roots[best] - spec.embedding_hint))
            best = i;
    double slack = 1e-9 * std::max(1.0, std::abs(roots[best]));
    if (std::abs(roots[best] - spec.embedding_hint) > spec.hint_radius + slack)
        throw InputError("embedding hint is not within its radius of any root of min_poly");
    double separation = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (i != best)
            separation = std::min(separation, std::abs(roots[i] - roots[best]));
    if (!(separation > 2 * spec.hint_radius))
        throw InputError("embedding hint does not isolate a unique root of min_poly");
    field->root_ = roots[best];

    // Certify reality with a Sturm count on a small rational interval.
    if (d == 1) {
        field->real_ = true;
        field->root_ = {-monic[0].get_d(), 0.0};
        field->base_enclosure_ = {-monic[0], -monic[0]};
    }
    else if (std::abs(roots[best].imag()) < 1e-7 * std::max(1.0, separation)) {
        double h = std::min(separation / 4, 1e-3);
        Rational lo = dyadic_from_double(roots[best].real() - h);
        Rational hi = dyadic_from_double(roots[best].real() + h);
        if (poly::eval(monic, lo) != 0 && poly::eval(monic, hi) != 0 && poly::sturm_count(monic, lo, hi) == 1) {
            field->real_ = true;
            field->base_enclosure_ = {lo, hi};
            field->base_enclosure_ = field->generator_enclosure(64);
            field->root_ = {field->base_enclosure_.midpoint(), 0.0};
        }
    }

    // Powers x^d .. x^(2d-2) modulo the polynomial, used by multiplication.
    for (int k = d; k <= 2 * d - 2; ++k) {
        std::vector<Rational> xk(static_cast<std::size_t>(k) + 1);
        xk[static_cast<std::size_t>(k)] = 1;
        field->reduced_powers_.push_back(reduce_with(monic, xk));
    }

    // Involution: sigma(theta) must be a root, and sigma o sigma = id.
    std::vector<Rational> inv = spec.involution;
    if (static_cast<int>(inv.size()) > d)
        throw InputError("involution image has more coefficients than the field degree");
    inv.resize(static_cast<std::size_t>(d));
    for (auto& c : inv)
        c.canonicalize();
    field->involution_ = inv;

    FieldHandle handle = field;
    FieldElement image{handle, inv};
    FieldElement acc{handle};
    FieldElement power = FieldElement::from_rational(handle, 1);
    for (const auto& c : monic) {
        acc += power * FieldElement::from_rational(handle, c);
        power *= image;
    }
    if (!acc.is_zero())
        throw InputError("involution image of the generator is not a root of min_poly");
    if (!(image.conjugate() == FieldElement::generator(handle)))
        throw InputError("involution applied twice is not the identity");
    return handle;
}

FieldHandle rational_field()
{
    static const FieldHandle q = make_field(FieldSpec{"Q", {Rational{0}, Rational{1}}, {0.0, 0.0}, 1e-9, {Rational{0}}});
    return q;
}

FieldHandle cyclotomic_field(int m)
{
    if (m < 1)
        throw InputError("cyclotomic order must be positive");
    if (m == 1 || m == 2) {
        // zeta = 1 or -1: present as Q with that generator
        Rational z = (m == 1) ? 1 : -1;
        return make_field(FieldSpec{"Q", {-z, Rational{1}}, {z.get_d(), 0.0}, 1e-9, {z}});
    }
    auto phi = poly::cyclotomic(m);
    int d = poly::degree(phi);
    // conjugate of zeta is zeta^(m-1), reduced modulo Phi_m
    std::vector<Rational> xpow(static_cast<std::size_t>(m));
    xpow[static_cast<std::size_t>(m - 1)] = 1;
    std::vector<Rational> inv = reduce_with(phi, xpow);
    inv.resize(static_cast<std::size_t>(d));
    double angle = 2 * std::numbers::pi / m;
    return make_field(FieldSpec{"Q(zeta_" + std::to_string(m) + ")", phi,
                                {std::cos(angle), std::sin(angle)}, 1e-9, inv});
}

FieldHandle real_quadratic_field(int d)
{
    if (d <= 1)
        throw InputError("real quadratic field needs d > 1");
    int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(d))));
    if (r * r == d)
        throw InputError("d is a perfect square");
    return make_field(FieldSpec{"Q(sqrt" + std::to_string(d) + ")", {Rational{-d}, Rational{0}, Rational{1}},
                                {std::sqrt(static_cast<double>(d)), 0.0}, 1e-9, {Rational{0}, Rational{1}}});
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(FieldHandle field) : field_(std::move(field))
{
    coeffs_.assign(static_cast<std::size_t>(field_->degree()), Rational{0});
}

FieldElement::FieldElement(FieldHandle field, std::vector<Rational> coeffs) : field_(std::move(field))
{
    for (auto& c : coeffs)
        c.canonicalize();
    if (coeffs.size() > static_cast<std::size_t>(field_->degree()))
        coeffs_ = reduce_with(field_->min_poly(), std::move(coeffs));
    else {
        coeffs_ = std::move(coeffs);
        coeffs_.resize(static_cast<std::size_t>(field_->degree()));
    }
}

FieldElement FieldElement::from_rational(FieldHandle field, const Rational& value)
{
    FieldElement out{std::move(field)};
    out.coeffs_[0] = value;
    out.coeffs_[0].canonicalize();
    return out;
}

FieldElement FieldElement::generator(FieldHandle field)
{
    if (field->degree() == 1)
        return from_rational(field, -field->min_poly()[0]);
    FieldElement out{std::move(field)};
    out.coeffs_[1] = 1;
    return out;
}

bool FieldElement::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_one() const
{
    if (coeffs_.empty() || coeffs_[0] != 1)
        return false;
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_rational() const
{
    return coeffs_.empty() || std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
}

void FieldElement::check_same_field(const FieldElement& other) const
{
    if (!field_ || !other.field_)
        throw DomainError("operation on a default-constructed field element");
    if (field_ != other.field_ && !field_->same_as(*other.field_))
        throw DomainError("elements belong to different number fields ('" + field_->name() + "' vs '" +
                          other.field_->name() + "')");
}

FieldElement FieldElement::operator-() const
{
    FieldElement out = *this;
    for (auto& c : out.coeffs_)
        c = -c;
    return out;
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs)
{
    check_same_field(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs)
{
    check_same_field(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs)
{
    check_same_field(rhs);
    std::size_t d = coeffs_.size();
    if (d == 1) {
        coeffs_[0] *= rhs.coeffs_[0];
        return *this;
    }
    std::vector<Rational> prod(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
        if (coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < d; ++j)
            if (rhs.coeffs_[j] != 0)
                prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    for (std::size_t k = d; k < prod.size(); ++k) {
        if (prod[k] == 0)
            continue;
        const auto& red = field_->reduced_powers_[k - d];
        for (std::size_t i = 0; i < d; ++i)
            prod[i] += prod[k] * red[i];
    }
    prod.resize(d);
    coeffs_ = std::move(prod);
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs)
{
    check_same_field(rhs);
    return *this *= rhs.inverse();
}

bool operator==(const FieldElement& a, const FieldElement& b)
{
    a.check_same_field(b);
    return a.coeffs_ == b.coeffs_;
}

std::strong_ordering repr_compare(const FieldElement& a, const FieldElement& b)
{
    for (std::size_t i = 0; i < a.coeffs_.size() && i < b.coeffs_.size(); ++i) {
        int c = cmp(a.coeffs_[i], b.coeffs_[i]);
        if (c != 0)
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.coeffs_.size() <=> b.coeffs_.size();
}

FieldElement FieldElement::inverse() const
{
    if (is_zero())
        throw DomainError("division by zero");
    if (coeffs_.size() == 1)
        return from_rational(field_, 1 / coeffs_[0]);
    // extended Euclid: s * a + t * p = g
    poly::Poly r0 = field_->min_poly(), r1{coeffs_.begin(), coeffs_.end()};
    poly::trim(r1);
    poly::Poly s0{}, s1{Rational{1}};
    while (!r1.empty()) {
        auto [q, r] = poly::divmod(r0, r1);
        poly::Poly s = poly::sub(s0, poly::mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (poly::degree(r0) != 0)
        throw DomainError("element is a zero divisor: min_poly of '" + field_->name() + "' is reducible");
    // r0 = s0 * a (mod p) is a nonzero constant
    return FieldElement{field_, poly::scale(s0, 1 / r0[0])};
}

FieldElement FieldElement::conjugate() const
{
    FieldElement image{field_, field_->involution_image()};
    if (coeffs_.size() == 1)
        return *this;
    FieldElement acc{field_};
    FieldElement power = from_rational(field_, 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0)
            acc += power * from_rational(field_, coeffs_[i]);
        if (i + 1 < coeffs_.size())
            power *= image;
    }
    return acc;
}

namespace {

CertifiedReal interval_mul(const CertifiedReal& a, const CertifiedReal& b)
{
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    CertifiedReal out{p[0], p[0]};
    for (const auto& v : p) {
        if (v < out.lo)
            out.lo = v;
        if (v > out.hi)
            out.hi = v;
    }
    return out;
}

} // namespace

CertifiedReal FieldElement::enclose(int bits) const
{
    CertifiedReal theta = field_->generator_enclosure(bits);
    CertifiedReal acc{coeffs_.back(), coeffs_.back()};
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
        acc = interval_mul(acc, theta);
        acc.lo += coeffs_[i];
        acc.hi += coeffs_[i];
    }
    return acc;
}

std::complex<double> FieldElement::approx() const
{
    std::complex<double> theta = field_->generator_value();
    std::complex<double> acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;)
        acc = acc * theta + coeffs_[i].get_d();
    return acc;
}

int real_sign(const FieldElement& x, int max_bits)
{
    if (!x.field().has_real_embedding())
        throw DomainError("real_sign needs a real embedding; field '" + x.field().name() + "' has none");
    if (x.is_zero())
        return 0;
    if (x.is_rational())
        return sgn(x.coeffs()[0]);
    for (int bits = 64;; bits *= 2) {
        int bounded = std::min(bits, max_bits);
        int s = x.enclose(bounded).sign_if_decided();
        if (s != 0)
            return s;
        if (bounded >= max_bits)
            throw PrecisionError("sign undecided after " + std::to_string(max_bits) + " bits of precision");
    }
}

int real_compare(const FieldElement& a, const FieldElement& b, int max_bits)
{
    return real_sign(a - b, max_bits);
}

} // namespace hirz
