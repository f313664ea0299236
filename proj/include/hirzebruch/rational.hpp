#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace hirz {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p" or "p/q" (q > 0 after normalisation). Throws InputError.
Rational parse_rational(std::string_view text);

/// Canonical gcd-reduced "p/q", or "p" when q == 1.
std::string format_rational(const Rational& value);

/// Dense univariate polynomials over Q, lowest degree first. The zero
/// polynomial is the empty vector.
namespace poly {

using Poly = std::vector<Rational>;

void trim(Poly& p);
int degree(const Poly& p);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Rational& c);
/// Quotient and remainder; `b` must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly derivative(const Poly& p);
Rational eval(const Poly& p, const Rational& x);
/// Number of distinct real roots in the half-open interval (lo, hi], via a
/// Sturm sequence. `p` must be nonzero.
int sturm_count(const Poly& p, const Rational& lo, const Rational& hi);
/// The m-th cyclotomic polynomial, m >= 1.
Poly cyclotomic(int m);

} // namespace poly
} // namespace hirz
