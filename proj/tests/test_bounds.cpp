#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qfbound/bounds.hpp"
#include "qfbound/error.hpp"
#include "qfbound/spectral.hpp"
#include "support/oracles.hpp"

using namespace qfb;

namespace {

const DiagonalForm kChi2Five({1, 1, 1, 1, 1}, {0, 0, 0, 0, 0});

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST(FormStats, ChiSquareFive) {
    const auto s = form_stats(kChi2Five);
    EXPECT_EQ(s.mean, 5.0);
    EXPECT_EQ(s.u_sq, 5.0);
    EXPECT_EQ(s.a_plus, 1.0);
    EXPECT_EQ(s.a_minus, 0.0);
}

TEST(FormStats, MixedSigns) {
    const auto s = form_stats(DiagonalForm({-2.0, 3.0}, {1.0, 0.0}));
    EXPECT_EQ(s.mean, 1.0);
    EXPECT_EQ(s.u_sq, 13.5);
    EXPECT_EQ(s.a_plus, 3.0);
    EXPECT_EQ(s.a_minus, 2.0);
}

TEST(FormStats, ZeroForm) {
    const DiagonalForm zero({0.0, 0.0}, {0.0, 0.0});
    const auto s = form_stats(zero);
    EXPECT_EQ(s.mean, 0.0);
    EXPECT_EQ(s.u_sq, 0.0);
    EXPECT_EQ(s.a_plus, 0.0);
    EXPECT_EQ(s.a_minus, 0.0);
    EXPECT_FALSE(std::signbit(s.a_minus));
    EXPECT_TRUE(zero.deterministic());
}

TEST(DiagonalFormType, Validation) {
    EXPECT_THROW(DiagonalForm({}, {}), ValidationError);
    EXPECT_THROW(DiagonalForm({1.0}, {1.0, 2.0}), ValidationError);
    EXPECT_THROW(DiagonalForm({NAN}, {0.0}), ValidationError);
}

TEST(UpperThreshold, ChiSquareFiveAtOne) {
    const auto t = upper_threshold(form_stats(kChi2Five), 1.0);
    EXPECT_NEAR(t.threshold, 7.0 + 2.0 * std::sqrt(5.0), 1e-14);
    EXPECT_NEAR(t.threshold, 11.4721, 1e-4);
    EXPECT_EQ(t.prob_bound, std::exp(-1.0));
    EXPECT_EQ(t.direction, Direction::upper);
}

TEST(UpperThreshold, PureLinearTerm) {
    const auto t = upper_threshold(form_stats(DiagonalForm({0.0}, {1.0})), 2.0);
    EXPECT_NEAR(t.threshold, 2.0, 1e-15);
}

TEST(UpperThreshold, RejectsBadExponent) {
    const auto s = form_stats(kChi2Five);
    EXPECT_THROW(upper_threshold(s, 0.0), ValidationError);
    EXPECT_THROW(upper_threshold(s, -1.0), ValidationError);
    EXPECT_THROW(upper_threshold(s, NAN), ValidationError);
    EXPECT_THROW(lower_threshold(s, INFINITY), ValidationError);
}

TEST(UpperThreshold, LargeExponentUnderflowsBound) {
    const auto t = upper_threshold(form_stats(kChi2Five), 800.0);
    EXPECT_EQ(t.prob_bound, 0.0);
    EXPECT_TRUE(std::isfinite(t.threshold));
}

TEST(LowerThreshold, ChiSquareFiveAtOne) {
    const auto t = lower_threshold(form_stats(kChi2Five), 1.0);
    EXPECT_NEAR(t.threshold, 5.0 - 2.0 * std::sqrt(5.0), 1e-14);
    EXPECT_NEAR(t.threshold, 0.5279, 1e-4);
}

TEST(LowerThreshold, DegenerateFormCollapsesToMean) {
    const auto s = form_stats(DiagonalForm({0.0}, {0.0}));
    for (double x : {0.1, 1.0, 50.0}) {
        EXPECT_EQ(lower_threshold(s, x).threshold, 0.0);
        EXPECT_EQ(upper_threshold(s, x).threshold, 0.0);
    }
}

TEST(Bounds, NegationDualityIsExact) {
    std::mt19937_64 g(5);
    std::uniform_real_distribution<double> ux(0.01, 20.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto form = test::random_form(g, 1 + trial % 9);
        const double x = ux(g);
        const double lower = lower_threshold(form_stats(form), x).threshold;
        const double upper_neg = upper_threshold(form_stats(form.negated()), x).threshold;
        ASSERT_EQ(lower, -upper_neg);
    }
}

TEST(Bounds, MonotoneInExponentAndDominateMean) {
    std::mt19937_64 g(6);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = form_stats(test::random_form(g, 1 + trial % 6));
        double prev_up = s.mean, prev_lo = s.mean;
        for (double x = 0.05; x < 40.0; x *= 1.5) {
            const double up = upper_threshold(s, x).threshold;
            const double lo = lower_threshold(s, x).threshold;
            EXPECT_GT(up, prev_up);
            EXPECT_LT(lo, prev_lo);
            EXPECT_GE(up, s.mean);
            EXPECT_LE(lo, s.mean);
            prev_up = up;
            prev_lo = lo;
        }
    }
}

TEST(TailExponent, QuadraticFormulaCase) {
    const FormStats s{0.0, 1.0, 1.0, 0.0};  // u = 1, v = 2
    const auto t = tail_exponent(s, 4.0, Direction::upper);
    EXPECT_NEAR(t.x, 1.0, 1e-15);
    EXPECT_NEAR(t.prob_bound, std::exp(-1.0), 1e-15);
    EXPECT_EQ(t.threshold, 4.0);
}

TEST(TailExponent, PureSubGaussianBranch) {
    const FormStats s{0.0, 1.0, 0.0, 0.0};  // u = 1, v = 0
    EXPECT_NEAR(tail_exponent(s, 2.0, Direction::upper).x, 1.0, 1e-15);
    EXPECT_NEAR(tail_exponent(s, 2.0, Direction::lower).x, 1.0, 1e-15);
}

TEST(TailExponent, Errors) {
    const auto s = form_stats(kChi2Five);
    EXPECT_THROW(tail_exponent(s, 0.0, Direction::upper), ValidationError);
    EXPECT_THROW(tail_exponent(s, -1.0, Direction::lower), ValidationError);
    EXPECT_THROW(tail_exponent(FormStats{}, 1.0, Direction::upper), DegenerateFormError);
}

TEST(TailExponent, RoundTripOverLogGrid) {
    std::mt19937_64 g(17);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = form_stats(test::random_form(g, 1 + trial % 12));
        for (double d = 1e-3; d <= 1e3; d *= 3.7) {
            for (Direction dir : {Direction::upper, Direction::lower}) {
                const auto inv = tail_exponent(s, d, dir);
                const double t = threshold(s, inv.x, dir).threshold;
                const double want = dir == Direction::upper ? s.mean + d : s.mean - d;
                ASSERT_LE(std::abs(t - want), 1e-10 * (1.0 + std::abs(s.mean) + d));
                ASSERT_EQ(inv.threshold, want);
            }
        }
    }
}

TEST(EnvelopeThreshold, Examples) {
    EXPECT_EQ(envelope_threshold(1.0, 0.0, 4.0), 4.0);
    EXPECT_EQ(envelope_threshold(0.0, 1.0, 3.0), 3.0);
    const auto s = form_stats(kChi2Five);
    EXPECT_NEAR(envelope_threshold(std::sqrt(5.0), 2.0, 1.0), upper_threshold(s, 1.0).threshold - s.mean, 1e-14);
    EXPECT_THROW(envelope_threshold(0.0, 0.0, 1.0), ValidationError);
    EXPECT_THROW(envelope_threshold(-1.0, 0.0, 1.0), ValidationError);
    EXPECT_THROW(envelope_threshold(1.0, 0.0, 0.0), ValidationError);
}

TEST(UnionThreshold, SingleFormMatchesPlainThreshold) {
    const auto s = form_stats(kChi2Five);
    const std::vector<FormStats> one{s};
    const auto u = union_threshold(one, 1.5, Direction::upper);
    ASSERT_EQ(u.size(), 1u);
    EXPECT_EQ(u[0].threshold, upper_threshold(s, 1.5).threshold);
}

TEST(UnionThreshold, InflatesByLogCount) {
    const auto s = form_stats(kChi2Five);
    const std::vector<FormStats> three{s, s, s};
    const auto u = union_threshold(three, 1.0, Direction::lower);
    for (const auto& b : u) {
        EXPECT_NEAR(b.x, 1.0 + std::log(3.0), 1e-15);
        EXPECT_NEAR(b.prob_bound * 3.0, std::exp(-1.0), 1e-15);
        EXPECT_EQ(b.threshold, lower_threshold(s, 1.0 + std::log(3.0)).threshold);
    }
    EXPECT_THROW(union_threshold(std::span<const FormStats>{}, 1.0, Direction::upper), ValidationError);
}

TEST(Bounds, MatrixFormulaMatchesReduction) {
    // tr(A), |A + A^T|_F^2 / 4 + |b|^2 / 2 and s+/s- plugged directly into the
    // matrix-form thresholds must agree with the reduced diagonal form.
    std::mt19937_64 g(23);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 10;
        const auto a = test::random_matrix(g, n, n, -2.0, 2.0);
        const auto b = test::uniform_vector(g, n, -2.0, 2.0);
        const auto red = reduce(QuadraticForm(a, b));
        const auto s = form_stats(red.diagonal_form());

        double frob = 0.0, bb = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            bb += b[i] * b[i];
            for (std::size_t j = 0; j < n; ++j) frob += (a(i, j) + a(j, i)) * (a(i, j) + a(j, i));
        }
        const double s_plus = std::max(red.eigenvalues.front(), 0.0);
        const double s_minus = std::max(-red.eigenvalues.back(), 0.0);
        const double root = std::sqrt(0.25 * frob + 0.5 * bb);
        for (double x : {0.1, 1.0, 7.5}) {
            const double up = a.trace() + 2.0 * root * std::sqrt(x) + 2.0 * s_plus * x;
            const double lo = a.trace() - 2.0 * root * std::sqrt(x) - 2.0 * s_minus * x;
            EXPECT_LE(rel(upper_threshold(s, x).threshold, up), 1e-10);
            EXPECT_LE(rel(lower_threshold(s, x).threshold, lo), 1e-10);
        }
    }
}

TEST(Direction, ParseAndPrint) {
    EXPECT_EQ(parse_direction("upper"), Direction::upper);
    EXPECT_EQ(parse_direction("lower"), Direction::lower);
    EXPECT_EQ(to_string(Direction::lower), "lower");
    EXPECT_THROW(parse_direction("both"), ValidationError);
}
