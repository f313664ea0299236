#include "hirzebruch/error.hpp"
#include "hirzebruch/number_field.hpp"
#include "hirzebruch/projective.hpp"

#include <doctest.h>

#include <random>

using namespace hirz;

namespace {

FieldElement rat(const FieldHandle& f, long p, long q = 1)
{
    return FieldElement::from_rational(f, Rational{p, q});
}

FieldElement random_element(const FieldHandle& f, std::mt19937& rng)
{
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    std::vector<Rational> c;
    for (int i = 0; i < f->degree(); ++i) {
        Rational r{num(rng), den(rng)};
        r.canonicalize();
        c.push_back(r);
    }
    return FieldElement{f, c};
}

std::array<FieldElement, 3> triple(const FieldHandle& f, long a, long b, long c)
{
    return {rat(f, a), rat(f, b), rat(f, c)};
}

} // namespace

TEST_CASE("rational parsing and formatting")
{
    CHECK(format_rational(parse_rational("4/6")) == "2/3");
    CHECK(format_rational(parse_rational("-7")) == "-7");
    CHECK_THROWS_AS(parse_rational("3/-1"), InputError);
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("1.5"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
    CHECK_THROWS_AS(parse_rational("2/"), InputError);
}

TEST_CASE("cyclotomic polynomials")
{
    using poly::Poly;
    CHECK(poly::cyclotomic(3) == Poly{1, 1, 1});
    CHECK(poly::cyclotomic(4) == Poly{1, 0, 1});
    CHECK(poly::cyclotomic(5) == Poly{1, 1, 1, 1, 1});
    CHECK(poly::cyclotomic(6) == Poly{1, -1, 1});
}

TEST_CASE("nf_arith examples")
{
    auto q5 = real_quadratic_field(5);
    auto s5 = FieldElement::generator(q5);
    CHECK(s5 * s5 == rat(q5, 5));

    auto q = rational_field();
    CHECK(rat(q, 2, 3) + rat(q, 1, 6) == rat(q, 5, 6));

    // zeta^3 = zeta * zeta^2 = zeta(-zeta - 1) = -zeta^2 - zeta = 1
    auto q3 = cyclotomic_field(3);
    auto z = FieldElement::generator(q3);
    CHECK((z * (z * z)).is_one());
    CHECK(z.inverse() == z * z);
}

TEST_CASE("nf_arith errors")
{
    auto q5 = real_quadratic_field(5);
    auto q3 = cyclotomic_field(3);
    CHECK_THROWS_AS(rat(q5, 1) / FieldElement{q5}, DomainError);
    CHECK_THROWS_AS(FieldElement::generator(q5) + FieldElement::generator(q3), DomainError);
    CHECK_THROWS_AS((void)(FieldElement::generator(q5) == FieldElement::generator(q3)), DomainError);
}

TEST_CASE("field axioms hold exactly on random triples")
{
    std::mt19937 rng(20261018);
    for (auto f : {rational_field(), real_quadratic_field(5), cyclotomic_field(3), cyclotomic_field(5),
                   cyclotomic_field(7)}) {
        for (int trial = 0; trial < 60; ++trial) {
            auto a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            if (!a.is_zero())
                CHECK((a * a.inverse()).is_one());
            CHECK(a.conjugate().conjugate() == a);
            CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
        }
    }
}

TEST_CASE("field construction validation")
{
    // x^2 - 4 has rational roots
    CHECK_THROWS_AS(make_field({"bad", {Rational{-4}, Rational{0}, Rational{1}}, {2.0, 0.0}, 1e-9, {0, 1}}), InputError);
    // not monic
    CHECK_THROWS_AS(make_field({"bad", {Rational{-5}, Rational{0}, Rational{2}}, {1.58, 0.0}, 1e-9, {0, 1}}),
                    InputError);
    // hint between the roots of x^2 - 5
    CHECK_THROWS_AS(make_field({"bad", {Rational{-5}, Rational{0}, Rational{1}}, {0.0, 0.0}, 1e-9, {0, 1}}),
                    InputError);
    // radius too large to isolate
    CHECK_THROWS_AS(make_field({"bad", {Rational{-5}, Rational{0}, Rational{1}}, {2.2360679775, 0.0}, 3.0, {0, 1}}),
                    InputError);
    // sqrt5 -> sqrt5 + 1 is not an automorphism
    CHECK_THROWS_AS(make_field({"bad", {Rational{-5}, Rational{0}, Rational{1}}, {2.2360679775, 0.0}, 1e-6, {1, 1}}),
                    InputError);
    // sqrt5 -> -sqrt5 is a valid involution
    auto f = make_field({"Q(sqrt5)'", {Rational{-5}, Rational{0}, Rational{1}}, {2.2360679775, 0.0}, 1e-6, {0, -1}});
    CHECK(f->has_real_embedding());
    CHECK(f->irreducibility() == Irreducibility::verified);
    CHECK(cyclotomic_field(5)->irreducibility() == Irreducibility::cyclotomic);
    CHECK_FALSE(cyclotomic_field(3)->has_real_embedding());
}

TEST_CASE("real_sign examples")
{
    auto q5 = real_quadratic_field(5);
    auto s5 = FieldElement::generator(q5);
    CHECK(real_sign(s5 - rat(q5, 2)) == 1);
    CHECK(real_sign(FieldElement{q5}) == 0);
    CHECK(real_sign(rat(q5, 2) - s5) == -1);
    CHECK_THROWS_AS(real_sign(FieldElement::generator(cyclotomic_field(3))), DomainError);
}

TEST_CASE("real_sign agrees with interval refinement and respects the bit budget")
{
    auto q2 = real_quadratic_field(2);
    auto s2 = FieldElement::generator(q2);
    // Pell convergents p/q of sqrt(2); the gap shrinks like 1/q^2
    Integer p = 1, q = 1;
    for (int i = 0; i < 140; ++i) {
        Integer np = p + 2 * q;
        q = p + q;
        p = np;
    }
    FieldElement gap = s2 - FieldElement::from_rational(q2, Rational{p, q});
    CHECK_THROWS_AS(real_sign(gap, 64), PrecisionError);
    int s = real_sign(gap);
    CHECK(s != 0);
    CHECK(gap.enclose(1024).sign_if_decided() == s);

    std::mt19937 rng(7);
    auto q5 = real_quadratic_field(5);
    for (int i = 0; i < 100; ++i) {
        auto a = random_element(q5, rng);
        CertifiedReal coarse = a.enclose(64);
        CertifiedReal fine = a.enclose(256);
        CHECK(coarse.lo <= coarse.hi);
        CHECK(fine.lo >= coarse.lo);
        CHECK(fine.hi <= coarse.hi);
        if (coarse.sign_if_decided() != 0)
            CHECK(coarse.sign_if_decided() == real_sign(a));
    }
}

TEST_CASE("meet and join")
{
    auto q = rational_field();
    CHECK(meet(ProjLine{triple(q, 1, 0, 0)}, ProjLine{triple(q, 0, 1, 0)}) == ProjPoint{triple(q, 0, 0, 1)});
    CHECK(join(ProjPoint{triple(q, 1, 0, 0)}, ProjPoint{triple(q, 0, 1, 0)}) == ProjLine{triple(q, 0, 0, 1)});
    // z0 = z1 and z1 = z2
    CHECK(meet(ProjLine{triple(q, 1, -1, 0)}, ProjLine{triple(q, 0, 1, -1)}) == ProjPoint{triple(q, 1, 1, 1)});
    CHECK_THROWS_AS(meet(ProjLine{triple(q, 1, 2, 3)}, ProjLine{triple(q, 2, 4, 6)}), InputError);
    CHECK_THROWS_AS(ProjPoint(triple(q, 0, 0, 0)), InputError);
}

TEST_CASE("meet/join duality and involution on random lines")
{
    std::mt19937 rng(99);
    auto f = cyclotomic_field(5);
    int checked = 0;
    while (checked < 40) {
        ProjLine l1{{random_element(f, rng), random_element(f, rng), random_element(f, rng)}};
        ProjLine l2{{random_element(f, rng), random_element(f, rng), random_element(f, rng)}};
        ProjLine l3{{random_element(f, rng), random_element(f, rng), random_element(f, rng)}};
        if (l1 == l2 || l1 == l3 || l2 == l3)
            continue;
        ProjPoint a = meet(l1, l2), b = meet(l1, l3);
        if (a == b)
            continue;
        CHECK(incident(a, l1));
        CHECK(incident(a, l2));
        CHECK(join(a, b) == l1);
        CHECK(l1.conjugate().conjugate() == l1);
        CHECK(a.conjugate().conjugate() == a);
        ++checked;
    }
}

TEST_CASE("canonical form and reality")
{
    auto q3 = cyclotomic_field(3);
    auto z = FieldElement::generator(q3);
    ProjLine real_line{{z, z, z}};
    CHECK(real_line[0].is_one());
    CHECK(real_line.is_real());
    ProjLine complex_line{{rat(q3, 1), -z, rat(q3, 0)}};
    CHECK_FALSE(complex_line.is_real());
}
