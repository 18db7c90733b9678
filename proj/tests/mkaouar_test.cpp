#include <gtest/gtest.h>

#include <limits>

#include <random>
#include <variant>

#include <hypercf/construction.hpp>
#include <hypercf/mkaouar.hpp>
#include <hypercf/report.hpp>

#include "support.hpp"

using namespace hypercf;
using hypercf::testing::random_poly;
using hypercf::testing::random_quotients;

namespace {

PatternSpec spec_of(std::uint64_t p, std::int64_t u1, std::int64_t u2, std::int64_t u3) {
    const PrimeField f(p);
    return build_spec(f, Triple(f, u1, u2, u3));
}

} // namespace

TEST(BiPoly, Invariants) {
    const PrimeField f(5);
    EXPECT_THROW(BiPoly({Poly::constant(f, 1)}), std::invalid_argument);
    EXPECT_THROW(BiPoly({Poly::constant(f, 1), Poly(f)}), std::invalid_argument);
    const BiPoly P({Poly::constant(f, 1), Poly::constant(f, 2), Poly(f)});
    EXPECT_EQ(P.degree_x(), 1U);
}

TEST(BiPoly, TaylorShiftAndReverse) {
    std::mt19937_64 rng(30);
    const PrimeField f(7);
    for (int i = 0; i < 50; ++i) {
        std::vector<Poly> c;
        for (int k = 0; k < 5; ++k) c.push_back(random_poly(f, i % 4, rng));
        c.push_back(random_poly(f, 2, rng));
        const BiPoly P(c);
        const Poly b = random_poly(f, 1 + i % 3, rng), t = random_poly(f, i % 5, rng);
        EXPECT_EQ(P.taylor_shift(b).eval(t), P.eval(t + b));
        if (!P.coeff(0).is_zero()) {
            const BiPoly Q = P.reversed();
            EXPECT_EQ(Q.degree_x(), P.degree_x());
            for (std::size_t k = 0; k <= P.degree_x(); ++k) EXPECT_EQ(Q.coeff(k), P.coeff(P.degree_x() - k));
        }
    }
}

TEST(NextStep, FirstPatternQuotient) {
    const auto step7 = next_step(pattern_equation(spec_of(7, 2, 4, 5)));
    ASSERT_TRUE(std::holds_alternative<ExtractionStep>(step7));
    EXPECT_EQ(std::get<ExtractionStep>(step7).bar, Poly::monomial(PrimeField(7), 2, 1));

    const auto step3 = next_step(pattern_equation(spec_of(3, 1, 1, 1)));
    ASSERT_TRUE(std::holds_alternative<ExtractionStep>(step3));
    EXPECT_EQ(std::get<ExtractionStep>(step3).bar, Poly::monomial(PrimeField(3), 1, 1));
}

TEST(NextStep, LinearEquationHasRationalRoot) {
    const PrimeField f(5);
    const BiPoly P({-Poly::monomial(f, 1, 1), Poly::constant(f, 1)}); // x - T
    const auto r = next_step(P);
    ASSERT_TRUE(std::holds_alternative<RationalRoot>(r));
    EXPECT_EQ(std::get<RationalRoot>(r).value, Poly::monomial(f, 1, 1));
}

TEST(NextStep, ConstantBarAborts) {
    const PrimeField f(5);
    // x^2 - 2: integer part is constant
    const BiPoly P({Poly::constant(f, -2), Poly(f), Poly::constant(f, 1)});
    EXPECT_THROW(next_step(P), ExpansionAborted);
    try {
        (void)expand(P, 5);
        FAIL();
    } catch (const ExpansionAborted& e) {
        EXPECT_EQ(e.emitted_count(), 0U);
        EXPECT_NE(std::string(e.what()).find("no admissible partial quotient"), std::string::npos);
    }
}

TEST(Expand, AbortReportsEmittedPrefix) {
    // (x - T)(x - T^2): two large roots, so the first bar is their sum and the
    // next equation has only small roots.
    const PrimeField f(5);
    const BiPoly P({Poly::monomial(f, 1, 3), -Poly::from_ints(f, {0, 1, 1}), Poly::constant(f, 1)});
    try {
        (void)expand(P, 10);
        FAIL();
    } catch (const ExpansionAborted& e) {
        EXPECT_EQ(e.emitted_count(), 1U);
        EXPECT_EQ(e.emitted().at(1), Poly::from_ints(f, {0, 1, 1}));
    }
}

TEST(Expand, GoldenPrefixP7) {
    const PrimeField f(7);
    const auto q = expand(pattern_equation(spec_of(7, 2, 4, 5)), 7);
    EXPECT_EQ(render_quotients(q), "[2*t, 4*t, 5*t, 6*t, 6*t^13 + 2*t^11 + t^9 + 6*t^7, t, 4*t]");
}

TEST(Expand, StopsOnRationalRoot) {
    const PrimeField f(3);
    const Poly T = Poly::monomial(f, 1, 1);
    const auto e = expand_detailed(BiPoly({-Poly::from_ints(f, {1, 0, 1}), T}), 10); // T x - (T^2 + 1)
    EXPECT_TRUE(e.terminated_by_rational_root);
    EXPECT_EQ(e.quotients, PartialQuotients({T, T}));
}

TEST(Expand, MonitorsCoefficientDegrees) {
    const auto e = expand_detailed(pattern_equation(spec_of(7, 2, 4, 5)), 65);
    EXPECT_LE(e.stats.max_coeff_degree, e.stats.coeff_degree_bound);
    EXPECT_EQ(e.stats.steps, 65U);
    EXPECT_THROW(expand(pattern_equation(spec_of(7, 2, 4, 5)), 0), std::invalid_argument);
}

TEST(EvalAtSeries, TrivialRoot) {
    const PrimeField f(7);
    const Poly T = Poly::monomial(f, 1, 1);
    const BiPoly P({-(T * T), Poly(f), Poly::constant(f, 1)}); // x^2 - T^2
    const auto r = eval_at_series(P, LaurentSeries::from_poly(T, -20));
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(r.valid_order(), -19);
}

TEST(EvalAtSeries, PatternSeriesIsRoot) {
    const auto spec = spec_of(3, 1, 1, 1);
    const auto q = pattern(spec, 21);
    const auto alpha = cf_to_series(q, -30);
    const auto r = eval_at_series(pattern_equation(spec), alpha);
    EXPECT_TRUE(r.is_zero()) << r;
    EXPECT_LE(r.valid_order(), -20);
}

TEST(EvalAtSeries, MillsRobbinsSeriesIsRoot) {
    const PrimeField f(5);
    const auto eq = mills_robbins_equation(f, FieldElement(f, 1));
    const auto q = expand(eq, 40);
    const auto r = eval_at_series(eq, cf_to_series(q, cf_series_floor(q)));
    EXPECT_TRUE(r.is_zero()) << r;
    EXPECT_LE(r.valid_order(), -60);
}

TEST(EvalAtSeries, NonRootIsDetected) {
    const auto spec = spec_of(5, 1, 2, 3);
    auto q = pattern(spec, 12).items();
    q[7] += Poly::monomial(spec.field, 1, 2);
    const PartialQuotients wrong(q);
    const auto r = eval_at_series(pattern_equation(spec), cf_to_series(wrong, cf_series_floor(wrong)));
    EXPECT_FALSE(r.is_zero());
}

TEST(MkaouarProperty, StepSoundOnRationals) {
    std::mt19937_64 rng(31);
    for (std::uint64_t p : {3, 5, 7}) {
        const PrimeField f(p);
        for (int i = 0; i < 200; ++i) {
            const auto q = random_quotients(f, 1 + i % 8, 4, rng);
            const auto c = last_convergent(q);
            const BiPoly P({-c.x, c.y}); // y x - x_n
            const auto e = expand_detailed(P, q.size() + 5);
            ASSERT_TRUE(e.terminated_by_rational_root);
            ASSERT_EQ(e.quotients, rational_to_cf(c.x, c.y));
        }
    }
}

TEST(MkaouarProperty, ResidualOrderDeepensWithMoreQuotients) {
    const auto spec = spec_of(5, 2, 3, 4);
    const auto eq = pattern_equation(spec);
    std::int64_t previous = std::numeric_limits<std::int64_t>::max();
    for (std::size_t m : {4, 8, 12, 20, 30}) {
        const auto q = expand(eq, m);
        const auto r = eval_at_series(eq, cf_to_series(q, cf_series_floor(q)));
        ASSERT_TRUE(r.is_zero());
        ASSERT_LT(r.valid_order(), previous) << m;
        previous = r.valid_order();
    }
}

TEST(MkaouarProperty, Deterministic) {
    const auto eq = pattern_equation(spec_of(5, 4, 1, 3));
    EXPECT_EQ(expand(eq, 30), expand(eq, 30));
    EXPECT_EQ(expand(eq, 30).prefix(10), expand(eq, 10));
}
