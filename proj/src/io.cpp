#include "hirzebruch/io.hpp"

#include "hirzebruch/error.hpp"

#include <cmath>

namespace hirz::io {

namespace {

std::vector<Rational> parse_coeffs(const Json& j, const char* what)
{
    if (!j.is_array())
        throw InputError(std::string(what) + ": expected an array of rational strings");
    std::vector<Rational> out;
    for (const auto& c : j) {
        if (c.is_string())
            out.push_back(parse_rational(c.get<std::string>()));
        else if (c.is_number_integer())
            out.push_back(Rational{c.get<long>()});
        else
            throw InputError(std::string(what) + ": coefficients must be rational strings");
    }
    return out;
}

const Json& member(const Json& obj, const char* key)
{
    if (!obj.is_object() || !obj.contains(key))
        throw InputError(std::string("missing field '") + key + "'");
    return obj.at(key);
}

double number(const Json& j, const char* what)
{
    if (!j.is_number())
        throw InputError(std::string(what) + ": expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v))
        throw InputError(std::string(what) + ": not finite");
    return v;
}

Json coeff_array(std::span<const Rational> c)
{
    Json out = Json::array();
    for (const auto& r : c)
        out.push_back(format_rational(r));
    return out;
}

} // namespace

Arrangement parse_arrangement(const Json& doc)
{
    const Json& fj = member(doc, "field");
    FieldSpec spec;
    spec.name = fj.contains("name") && fj.at("name").is_string() ? fj.at("name").get<std::string>() : "K";
    spec.min_poly = parse_coeffs(member(fj, "min_poly"), "min_poly");
    const Json& emb = member(fj, "embedding");
    if (!emb.is_array() || emb.size() != 2)
        throw InputError("embedding: expected [re, im]");
    spec.embedding_hint = {number(emb[0], "embedding"), number(emb[1], "embedding")};
    if (fj.contains("radius"))
        spec.hint_radius = number(fj.at("radius"), "radius");
    spec.involution = parse_coeffs(member(fj, "involution"), "involution");
    FieldHandle field = make_field(spec);
    const auto d = static_cast<std::size_t>(field->degree());

    const Json& lj = member(doc, "lines");
    if (!lj.is_array())
        throw InputError("lines: expected an array");
    std::vector<ProjLine> lines;
    for (const auto& l : lj) {
        if (!l.is_array() || l.size() != 3)
            throw InputError("lines: every line needs three coordinates");
        std::array<FieldElement, 3> coords;
        for (std::size_t i = 0; i < 3; ++i) {
            auto c = parse_coeffs(l[i], "line coordinate");
            if (c.size() > d)
                throw InputError("line coordinate has more coefficients than the field degree");
            c.resize(d);
            coords[i] = FieldElement(field, std::move(c));
        }
        lines.push_back(ProjLine{std::move(coords)});
    }
    std::string name = doc.contains("name") && doc.at("name").is_string() ? doc.at("name").get<std::string>() : "";
    return Arrangement{field, std::move(lines), name};
}

Arrangement parse_arrangement_text(std::string_view text)
{
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    return parse_arrangement(doc);
}

Json emit_field(const NumberField& field)
{
    Json out;
    out["name"] = field.name();
    out["min_poly"] = coeff_array(field.min_poly());
    out["embedding"] = Json::array({field.embedding_hint().real(), field.embedding_hint().imag()});
    out["radius"] = field.hint_radius();
    out["involution"] = coeff_array(field.involution_image());
    return out;
}

Json emit_element(const FieldElement& x)
{
    return coeff_array(x.coeffs());
}

Json emit_arrangement(const Arrangement& arr)
{
    Json out;
    if (!arr.name().empty())
        out["name"] = arr.name();
    out["field"] = emit_field(*arr.field());
    Json lines = Json::array();
    for (const auto& l : arr.lines())
        lines.push_back(Json::array({emit_element(l[0]), emit_element(l[1]), emit_element(l[2])}));
    out["lines"] = std::move(lines);
    return out;
}

Json emit_profile(const TProfile& t)
{
    Json out = Json::object();
    for (auto [k, v] : t)
        out[std::to_string(k)] = v;
    return out;
}

} // namespace hirz::io
