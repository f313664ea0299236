#include "hirzebruch/catalog.hpp"

#include "hirzebruch/error.hpp"

namespace hirz::catalog {

namespace {

FieldElement rat(const FieldHandle& f, long v)
{
    return FieldElement::from_rational(f, Rational{v});
}

ProjLine line(const FieldElement& a, const FieldElement& b, const FieldElement& c)
{
    return ProjLine{{a, b, c}};
}

std::vector<FieldElement> roots_of_unity(const FieldHandle& f, int m)
{
    std::vector<FieldElement> out{rat(f, 1)};
    FieldElement zeta = FieldElement::generator(f);
    for (int k = 1; k < m; ++k)
        out.push_back(out.back() * zeta);
    return out;
}

std::vector<ProjLine> ceva_lines(const FieldHandle& f, int m)
{
    std::vector<ProjLine> out;
    auto zs = roots_of_unity(f, m);
    FieldElement one = rat(f, 1), zero = rat(f, 0);
    for (const auto& z : zs)
        out.push_back(line(one, -z, zero)); // z0 = zeta^k z1
    for (const auto& z : zs)
        out.push_back(line(zero, one, -z)); // z1 = zeta^k z2
    for (const auto& z : zs)
        out.push_back(line(-z, zero, one)); // z2 = zeta^k z0
    return out;
}

TProfile ceva_profile(int m)
{
    TProfile t;
    t[3] += m * m;
    t[m] += 3;
    return t;
}

TProfile extended_ceva_profile(int m)
{
    TProfile t;
    t[2] += 3 * m;
    t[3] += m * m;
    t[m + 2] += 3;
    return t;
}

std::string cyclotomic_description(int m)
{
    if (m <= 2)
        return "Q";
    if (m == 4)
        return "Q(zeta_4) = Q(i)";
    return "Q(zeta_" + std::to_string(m) + ")";
}

} // namespace

Arrangement coxeter_real(int d)
{
    auto q = rational_field();
    auto L = [&](long a, long b, long c) { return rational_line(q, a, b, c); };
    switch (d) {
    case 2:
        return Arrangement{q, {L(1, 0, 0), L(0, 1, 0), L(0, 0, 1)}, "coxeter2"};
    case 3:
        // coordinate triangle and the three cevians through (1:1:1)
        return Arrangement{q, {L(1, 0, 0), L(0, 1, 0), L(0, 0, 1), L(1, -1, 0), L(0, 1, -1), L(1, 0, -1)}, "coxeter3"};
    case 4:
        // square with vertices (+-1, +-1): sides x = +-1, y = +-1, diagonals
        // x = +-y, mid-lines x = 0, y = 0, and the line at infinity
        return Arrangement{q,
                           {L(1, 0, -1), L(1, 0, 1), L(0, 1, -1), L(0, 1, 1), L(1, -1, 0), L(1, 1, 0), L(1, 0, 0),
                            L(0, 1, 0), L(0, 0, 1)},
                           "coxeter4"};
    case 5: {
        // mirrors of the icosahedral group: the coordinate planes and the
        // cyclic permutations of (1, +-phi^2, +-phi)
        auto f = real_quadratic_field(5);
        FieldElement phi{f, {Rational{1, 2}, Rational{1, 2}}};
        FieldElement phi2 = phi * phi;
        FieldElement one = rat(f, 1), zero = rat(f, 0);
        std::vector<ProjLine> lines{line(one, zero, zero), line(zero, one, zero), line(zero, zero, one)};
        for (int s1 : {1, -1}) {
            for (int s2 : {1, -1}) {
                std::array<FieldElement, 3> v{one, phi2 * rat(f, s1), phi * rat(f, s2)};
                for (int r = 0; r < 3; ++r)
                    lines.push_back(line(v[static_cast<std::size_t>(r)], v[static_cast<std::size_t>((r + 1) % 3)],
                                         v[static_cast<std::size_t>((r + 2) % 3)]));
            }
        }
        return Arrangement{f, std::move(lines), "coxeter5"};
    }
    default:
        throw InputError("coxeter_real: d must be 2, 3, 4 or 5");
    }
}

Arrangement ceva(int m)
{
    if (m < 3)
        throw InputError("ceva: m must be at least 3");
    auto f = cyclotomic_field(m);
    return Arrangement{f, ceva_lines(f, m), "ceva" + std::to_string(m)};
}

Arrangement extended_ceva(int m)
{
    if (m < 2)
        throw InputError("extended_ceva: m must be at least 2");
    auto f = cyclotomic_field(m);
    auto lines = ceva_lines(f, m);
    for (auto l : {rational_line(f, 1, 0, 0), rational_line(f, 0, 1, 0), rational_line(f, 0, 0, 1)})
        lines.push_back(l);
    return Arrangement{f, std::move(lines), "extended_ceva" + std::to_string(m)};
}

Arrangement hesse()
{
    auto f = cyclotomic_field(3);
    auto w = roots_of_unity(f, 3);
    FieldElement one = rat(f, 1), zero = rat(f, 0);
    // the four singular members of x^3 + y^3 + z^3 - 3 t xyz: xyz = 0 and
    // the triangles x + w^a y + w^b z = 0
    std::vector<ProjLine> lines{line(one, zero, zero), line(zero, one, zero), line(zero, zero, one)};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            lines.push_back(line(one, w[static_cast<std::size_t>(a)], w[static_cast<std::size_t>(b)]));
    return Arrangement{f, std::move(lines), "hesse"};
}

const std::vector<Entry>& entries()
{
    static const std::vector<Entry> list = [] {
        std::vector<Entry> out;
        out.push_back({"coxeter2", 1, {{2, 3}}, "Q", true, [] { return coxeter_real(2); }});
        out.push_back({"coxeter3", 2, {{2, 3}, {3, 4}}, "Q", true, [] { return coxeter_real(3); }});
        out.push_back({"coxeter4", 3, {{2, 6}, {3, 4}, {4, 3}}, "Q", true, [] { return coxeter_real(4); }});
        out.push_back(
            {"coxeter5", 5, {{2, 15}, {3, 10}, {5, 6}}, "Q(sqrt5)", true, [] { return coxeter_real(5); }});
        for (int m = 3; m <= 5; ++m)
            out.push_back({"ceva" + std::to_string(m), m, ceva_profile(m), cyclotomic_description(m), false,
                           [m] { return ceva(m); }});
        for (int m = 2; m <= 4; ++m)
            out.push_back({"extended_ceva" + std::to_string(m), m + 1, extended_ceva_profile(m),
                           cyclotomic_description(m), m == 2, [m] { return extended_ceva(m); }});
        out.push_back({"hesse", 4, {{2, 12}, {4, 9}}, "Q(zeta_3)", false, [] { return hesse(); }});
        return out;
    }();
    return list;
}

Entry find(const std::string& name)
{
    for (const auto& e : entries())
        if (e.name == name)
            return e;
    auto parse_param = [&](const std::string& prefix) -> std::optional<int> {
        if (name.rfind(prefix, 0) != 0)
            return std::nullopt;
        std::string rest = name.substr(prefix.size());
        if (rest.empty() || rest.size() > 3 || rest.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("bad catalog parameter in '" + name + "'");
        return std::stoi(rest);
    };
    if (auto m = parse_param("extended_ceva:")) {
        int mm = *m;
        if (mm < 2)
            throw InputError("extended_ceva: m must be at least 2");
        return {name, mm + 1, extended_ceva_profile(mm), cyclotomic_description(mm), mm == 2,
                [mm] { return extended_ceva(mm); }};
    }
    if (auto m = parse_param("ceva:")) {
        int mm = *m;
        if (mm < 3)
            throw InputError("ceva: m must be at least 3");
        return {name, mm, ceva_profile(mm), cyclotomic_description(mm), false, [mm] { return ceva(mm); }};
    }
    throw InputError("unknown catalog entry '" + name + "'");
}

} // namespace hirz::catalog
