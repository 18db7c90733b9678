#include <gtest/gtest.h>

#include <sstream>

#include <hypercf/construction.hpp>
#include <hypercf/report.hpp>

#include "support.hpp"

using namespace hypercf;

TEST(Report, JsonSchemaKeys) {
    const PrimeField f(7);
    const auto spec = build_spec(f, Triple(f, 2, 4, 5));
    Report r;
    r.p = 7;
    r.u = {2, 4, 5};
    fill_quotients(r, pattern(spec, 7));
    fill_profile(r, profile(pattern(spec, 7), 7));
    r.nu = nu(7);
    r.verified = true;
    r.residual_order = -100;
    const nlohmann::json j = r;
    for (const char* key : {"p", "u", "partial_quotients", "degrees", "leading_coefficients", "big_positions", "nu",
                            "verified", "residual_order"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["partial_quotients"][0]["coeffs"], nlohmann::json::parse("[0, 2]"));
    EXPECT_EQ(j["big_positions"], nlohmann::json::parse("[[1, 5, 13]]"));
    EXPECT_EQ(j["nu"], nlohmann::json::parse(R"({"num": 6, "den": 1})"));
}

TEST(Report, JsonRoundTripIsIdempotent) {
    const PrimeField f(3);
    const auto spec = build_spec(f, Triple(f, 1, 2, 1));
    Report r;
    r.p = 3;
    r.u = {1, 2, 1};
    fill_quotients(r, pattern(spec, 21));
    r.nu = nu(3);
    const std::string once = nlohmann::json(r).dump();
    const Report parsed = nlohmann::json::parse(once).get<Report>();
    EXPECT_EQ(parsed, r);
    EXPECT_EQ(nlohmann::json(parsed).dump(), once);

    const Report sparse = nlohmann::json::parse(R"({"p": 5, "u": [1]})").get<Report>();
    EXPECT_FALSE(sparse.degrees);
    EXPECT_EQ(nlohmann::json(sparse).dump(), R"({"p":5,"u":[1]})");
}

TEST(EquationFile, RoundTrip) {
    const PrimeField f(7);
    const auto eq = pattern_equation(build_spec(f, Triple(f, 2, 4, 5)));
    const std::string text = write_equation(eq);
    std::istringstream in(text);
    EXPECT_EQ(parse_equation(in, f), eq);
}

TEST(EquationFile, SparseRowsAndComments) {
    const PrimeField f(5);
    std::istringstream in("# x^2 - T x - 1, root [T, T, ...]\n2: 1\n\n0: 4\n1: 0 4   # -T\n");
    const auto eq = parse_equation(in, f);
    EXPECT_EQ(eq.degree_x(), 2U);
    EXPECT_EQ(expand(eq, 5), PartialQuotients(std::vector<Poly>(5, Poly::monomial(f, 1, 1))));
}

TEST(EquationFile, Errors) {
    const PrimeField f(5);
    for (const char* bad : {"", "1 2 3\n", "x: 1\n", "1: 1\n1: 2\n", "1: a\n", "0: 1\n"}) {
        std::istringstream in(bad);
        EXPECT_THROW(parse_equation(in, f), std::invalid_argument) << bad;
    }
}

TEST(Rendering, Lists) {
    EXPECT_EQ(render_list(std::vector<int>{1, 13, 685}), "[1, 13, 685]");
    EXPECT_EQ(render_list(std::vector<int>{}), "[]");
}
