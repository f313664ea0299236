#include "hirzebruch/rational.hpp"

#include "hirzebruch/error.hpp"

#include <cctype>

namespace hirz {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

Integer parse_integer(std::string_view s)
{
    if (!s.empty() && s[0] == '+')
        s.remove_prefix(1);
    return Integer{std::string{s}, 10};
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (!is_integer_literal(num))
        throw InputError("malformed rational '" + std::string{text} + "'");
    Rational out;
    if (slash == std::string_view::npos) {
        out = Rational{parse_integer(num)};
    }
    else {
        std::string_view den = text.substr(slash + 1);
        if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+')
            throw InputError("malformed rational '" + std::string{text} + "'");
        Integer d = parse_integer(den);
        if (d == 0)
            throw InputError("zero denominator in '" + std::string{text} + "'");
        out = Rational{parse_integer(num), d};
        out.canonicalize();
    }
    return out;
}

std::string format_rational(const Rational& value)
{
    Rational v = value;
    v.canonicalize();
    return v.get_str(10);
}

namespace poly {

void trim(Poly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

int degree(const Poly& p)
{
    return static_cast<int>(p.size()) - 1;
}

Poly add(const Poly& a, const Poly& b)
{
    Poly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] += b[i];
    trim(out);
    return out;
}

Poly sub(const Poly& a, const Poly& b)
{
    Poly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] -= b[i];
    trim(out);
    return out;
}

Poly mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty())
        return {};
    Poly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

Poly scale(const Poly& a, const Rational& c)
{
    Poly out = a;
    for (auto& x : out)
        x *= c;
    trim(out);
    return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
{
    if (b.empty())
        throw DomainError("polynomial division by zero");
    Poly rem = a;
    trim(rem);
    int db = degree(b);
    if (degree(rem) < db)
        return {Poly{}, rem};
    Poly quot(static_cast<std::size_t>(degree(rem) - db + 1));
    const Rational& lead = b.back();
    while (!rem.empty() && degree(rem) >= db) {
        int shift = degree(rem) - db;
        Rational c = rem.back() / lead;
        quot[static_cast<std::size_t>(shift)] = c;
        for (int i = 0; i <= db; ++i)
            rem[static_cast<std::size_t>(i + shift)] -= c * b[static_cast<std::size_t>(i)];
        trim(rem);
    }
    trim(quot);
    return {quot, rem};
}

Poly derivative(const Poly& p)
{
    if (p.size() <= 1)
        return {};
    Poly out(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i)
        out[i - 1] = p[i] * static_cast<long>(i);
    trim(out);
    return out;
}

Rational eval(const Poly& p, const Rational& x)
{
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

namespace {

int sign_changes(const std::vector<Poly>& chain, const Rational& x)
{
    int changes = 0;
    int last = 0;
    for (const auto& q : chain) {
        int s = sgn(eval(q, x));
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

} // namespace

int sturm_count(const Poly& p, const Rational& lo, const Rational& hi)
{
    Poly p0 = p;
    trim(p0);
    if (p0.empty())
        throw DomainError("Sturm sequence of the zero polynomial");
    std::vector<Poly> chain{p0, derivative(p0)};
    while (!chain.back().empty()) {
        auto [q, r] = divmod(chain[chain.size() - 2], chain.back());
        (void)q;
        if (r.empty())
            break;
        chain.push_back(scale(r, Rational{-1}));
    }
    if (chain.back().empty())
        chain.pop_back();
    return sign_changes(chain, lo) - sign_changes(chain, hi);
}

Poly cyclotomic(int m)
{
    if (m < 1)
        throw InputError("cyclotomic index must be positive");
    // x^m - 1 = prod_{d | m} Phi_d(x)
    Poly num(static_cast<std::size_t>(m) + 1);
    num[0] = -1;
    num[static_cast<std::size_t>(m)] = 1;
    for (int d = 1; d < m; ++d) {
        if (m % d != 0)
            continue;
        num = divmod(num, cyclotomic(d)).first;
    }
    return num;
}

} // namespace poly
} // namespace hirz
