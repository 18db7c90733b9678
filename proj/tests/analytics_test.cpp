#include <gtest/gtest.h>

#include <hypercf/analytics.hpp>

#include "support.hpp"

using namespace hypercf;

namespace {

// Degree list printed for p = 7, u = (2, 4, 5), 65 quotients.
std::vector<std::int64_t> golden_degrees() {
    std::vector<std::int64_t> d(65, 1);
    d[4] = 13;
    d[13] = 97;
    d[64] = 685;
    return d;
}

} // namespace

TEST(ClosedForms, FirstIndex) {
    for (std::uint64_t p : {3, 5, 7, 11, 13}) {
        EXPECT_EQ(closed_forms(p, 1).n_k, 5);
        EXPECT_EQ(closed_forms(p, 1).s_k, 4);
    }
    EXPECT_THROW(closed_forms(7, 0), std::invalid_argument);
}

TEST(ClosedForms, GoldenPositionsP7) {
    EXPECT_EQ(closed_forms(7, 2).n_k, 14);
    EXPECT_EQ(closed_forms(7, 2).s_k, 25);
    EXPECT_EQ(closed_forms(7, 3).n_k, 65);
}

TEST(ClosedForms, RecurrencesHold) {
    for (std::uint64_t p : {3, 5, 7, 11, 13}) {
        for (unsigned k = 1; k < 6; ++k) {
            const auto a = closed_forms(p, k), b = closed_forms(p, k + 1);
            const auto pk = static_cast<std::int64_t>(ipow(p, k));
            EXPECT_EQ(b.n_k, a.n_k + pk + 2);
            EXPECT_EQ(b.s_k, a.s_k + 3 * pk);
        }
    }
}

TEST(Nu, ExactValues) {
    EXPECT_EQ(nu(7), Rational(6));
    EXPECT_EQ(nu(3), Rational(10, 3));
    EXPECT_LE(nu(3), Rational(4));
    for (std::uint64_t p : {3, 5, 7, 11, 13, 101}) {
        EXPECT_GT(nu(p), Rational(2));
        EXPECT_LE(nu(p), Rational(static_cast<std::int64_t>(p) + 1));
    }
}

TEST(Profile, GoldenDegreeList) {
    const auto prof = profile(golden_degrees(), 7);
    ASSERT_EQ(prof.big_positions.size(), 3U);
    EXPECT_EQ(prof.big_positions[0].n, 5U);
    EXPECT_EQ(prof.big_positions[0].degree, 13);
    EXPECT_EQ(prof.big_positions[1].n, 14U);
    EXPECT_EQ(prof.big_positions[1].degree, 97);
    EXPECT_EQ(prof.big_positions[1].sum_before, 25);
    EXPECT_EQ(prof.big_positions[2].n, 65U);
    EXPECT_EQ(prof.big_positions[2].degree, 685);
    EXPECT_TRUE(prof.matches_closed_forms);
}

TEST(Profile, AllDegreeOne) {
    const auto prof = profile(std::vector<std::int64_t>(20, 1), 5);
    EXPECT_TRUE(prof.big_positions.empty());
    EXPECT_TRUE(prof.matches_closed_forms);
    EXPECT_THROW(profile(std::vector<std::int64_t>{1, 0}, 5), std::invalid_argument);
}

TEST(Profile, DetectsShiftedPosition) {
    auto d = golden_degrees();
    std::swap(d[13], d[14]);
    EXPECT_FALSE(profile(d, 7).matches_closed_forms);
}

TEST(IrrationalityReport, RatiosIncreaseTowardLimit) {
    for (std::uint64_t p : {3, 5, 7, 11, 13}) {
        const auto r = irrationality_report(p, 6);
        const Rational limit = r.nu - 2;
        for (std::size_t i = 1; i < r.ratio_samples.size(); ++i) {
            EXPECT_GT(r.ratio_samples[i], r.ratio_samples[i - 1]);
            EXPECT_LT(r.ratio_samples[i], limit);
        }
        // k = 4 within 1% of the limit, compared exactly
        const Rational gap = limit - r.ratio_samples[3];
        EXPECT_LT(gap * 100, limit) << p;
        EXPECT_EQ(r.liouville_upper, static_cast<std::int64_t>(p) + 1);
    }
}

TEST(IrrationalityReport, EmpiricalLimsupFromProfile) {
    const auto prof = profile(golden_degrees(), 7);
    const auto r = irrationality_report(7, 3, &prof);
    ASSERT_TRUE(r.empirical_limsup);
    // observed ratios 13/4, 97/25, 685/172
    EXPECT_EQ(*r.empirical_limsup, Rational(685, 172));
}
