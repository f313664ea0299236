#include "hirzebruch/catalog.hpp"
#include "hirzebruch/error.hpp"
#include "hirzebruch/io.hpp"

#include <doctest.h>

using namespace hirz;

namespace {

std::vector<std::string> coeff_strings(const FieldElement& x)
{
    std::vector<std::string> out;
    for (const auto& c : x.coeffs())
        out.push_back(format_rational(c));
    return out;
}

const char* q_field = R"("field":{"name":"Q","min_poly":["0","1"],"embedding":[0,0],"involution":["0"]})";

} // namespace

TEST_CASE("emit then parse reproduces every catalog entry")
{
    for (const auto& e : catalog::entries()) {
        CAPTURE(e.name);
        auto a = e.build();
        auto text = io::emit_arrangement(a).dump();
        auto b = io::parse_arrangement_text(text);
        CHECK(b.field()->same_as(*a.field()));
        REQUIRE(b.size() == a.size());
        for (int i = 0; i < a.size(); ++i)
            for (std::size_t c = 0; c < 3; ++c)
                CHECK(coeff_strings(a.lines()[static_cast<std::size_t>(i)][c]) ==
                      coeff_strings(b.lines()[static_cast<std::size_t>(i)][c]));
        CHECK(io::emit_arrangement(b).dump() == text);
    }
}

TEST_CASE("parsed lines are projectively normalised")
{
    std::string doc = std::string("{") + q_field + R"(,"lines":[[["2"],["4"],["-6"]],[["0"],["3/9"],["1"]]]})";
    auto a = io::parse_arrangement_text(doc);
    CHECK(coeff_strings(a.lines()[0][1]) == std::vector<std::string>{"2"});
    CHECK(coeff_strings(a.lines()[0][2]) == std::vector<std::string>{"-3"});
    CHECK(coeff_strings(a.lines()[1][2]) == std::vector<std::string>{"3"});
}

TEST_CASE("malformed files are input errors")
{
    auto bad = [](const std::string& lines) {
        return std::string("{") + q_field + ",\"lines\":" + lines + "}";
    };
    CHECK_THROWS_AS(io::parse_arrangement_text("{"), InputError);
    CHECK_THROWS_AS(io::parse_arrangement_text(R"({"lines":[]})"), InputError);
    CHECK_THROWS_AS(io::parse_arrangement_text(bad(R"([[["1/0"],["1"],["1"]]])")), InputError);
    CHECK_THROWS_AS(io::parse_arrangement_text(bad(R"([[["1"],["1"]]])")), InputError);
    CHECK_THROWS_AS(io::parse_arrangement_text(bad(R"([[["1","2"],["1"],["0"]]])")), InputError);
    CHECK_THROWS_AS(io::parse_arrangement_text(bad(R"([[["0"],["0"],["0"]]])")), InputError);
    CHECK_THROWS_AS(io::parse_arrangement_text(bad(R"([[["1"],["0"],["0"]],[["2"],["0"],["0"]]])")), InputError);
    CHECK_THROWS_AS(io::parse_arrangement_text(bad(R"([[["x"],["0"],["0"]]])")), InputError);
}

TEST_CASE("field declarations are validated")
{
    // x^2 - 2 with the hint far from both roots
    std::string doc =
        R"({"field":{"min_poly":["-2","0","1"],"embedding":[5,0],"involution":["0","-1"]},"lines":[]})";
    CHECK_THROWS_AS(io::parse_arrangement_text(doc), InputError);
    std::string good =
        R"x({"field":{"name":"Q(sqrt2)","min_poly":["-2","0","1"],"embedding":[1.4142135623730951,0],)x"
        R"x("involution":["0","-1"]},"lines":[[["1"],["0","1"],["0"]],[["0"],["1"],["1"]]]})x";
    auto a = io::parse_arrangement_text(good);
    CHECK(a.field()->degree() == 2);
    CHECK(a.field()->has_real_embedding());
    CHECK(coeff_strings(a.lines()[0][1]) == std::vector<std::string>{"0", "1"});
    CHECK(coeff_strings(a.lines()[0][0]) == std::vector<std::string>{"1", "0"});
}
