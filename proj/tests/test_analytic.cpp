#include "vho/analytic.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "support/quadrature.hpp"
#include "vho/errors.hpp"
#include "vho/geometry.hpp"
#include "vho/math.hpp"

namespace {

using namespace vho;

// Reference values computed with 30-digit arithmetic from the closed forms.
constexpr double kPdfAt10 = 0.055355383660639312916;   // t=10, r1=80, r2=120, v=10
constexpr double kCdfAt10 = 0.52367866576871834067;    // same point
constexpr double kThresholdN = 1.6677449158113727674;  // r=100, v=10, tau_t=2, p=0.02
constexpr double kThresholdM = 0.83835562804106263864; // r=100, v=10, tau_a=1, p=0.01
constexpr double kMassBelowOneSecond = 0.062674475639417548841;  // r=100, v=10, tau=1
constexpr double kMeanDwell = 9.2534015119292102920;   // r1=r2=100, v=10

TEST(HandoverTimingTest, SumsTheLatencyBudget) {
    const HandoverTiming timing(1.5, 0.5);
    EXPECT_EQ(timing.tau_a(), 1.5);
    EXPECT_EQ(timing.tau_d(), 0.5);
    EXPECT_EQ(timing.tau_t(), 2.0);
    EXPECT_THROW(HandoverTiming(0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(HandoverTiming(1.0, -0.5), std::invalid_argument);
}

TEST(ProbabilityTargetsTest, AcceptsTheClosedUnitInterval) {
    EXPECT_NO_THROW(ProbabilityTargets(0.0, 1.0));
    EXPECT_THROW(ProbabilityTargets(-0.1, 0.5), std::invalid_argument);
    EXPECT_THROW(ProbabilityTargets(0.5, 1.5), std::invalid_argument);
}

TEST(ThetaDistributionTest, KnownValuesAndNormalization) {
    EXPECT_EQ(theta_cdf(0.0), 0.0);
    EXPECT_EQ(theta_cdf(kPi), 1.0);
    EXPECT_DOUBLE_EQ(theta_cdf(kPi / 2.0), 0.75);
    EXPECT_DOUBLE_EQ(theta_pdf(kPi / 2.0), 1.0 / kPi);
    EXPECT_EQ(theta_pdf(-0.1), 0.0);
    EXPECT_EQ(theta_pdf(kPi + 0.1), 0.0);

    const double mass = vho_test::integrate([](double x) { return theta_pdf(x); }, 0.0, kPi);
    EXPECT_NEAR(mass, 1.0, 1e-12);
    for (const double theta : {0.3, 1.0, 2.0, 3.0}) {
        const double part =
            vho_test::integrate([](double x) { return theta_pdf(x); }, 0.0, theta);
        EXPECT_NEAR(part, theta_cdf(theta), 1e-10);
    }
}

TEST(TraversalTimePdfTest, MatchesTheReferencePoint) {
    EXPECT_NEAR(traversal_time_pdf(10.0, 80.0, 120.0, 10.0), kPdfAt10, 1e-12 * kPdfAt10);
    // entry and exit radii are interchangeable
    EXPECT_EQ(traversal_time_pdf(10.0, 80.0, 120.0, 10.0),
              traversal_time_pdf(10.0, 120.0, 80.0, 10.0));
}

TEST(TraversalTimePdfTest, VanishesOutsideTheSupport) {
    EXPECT_EQ(traversal_time_pdf(3.9, 80.0, 120.0, 10.0), 0.0);
    EXPECT_EQ(traversal_time_pdf(4.0, 80.0, 120.0, 10.0), 0.0);
    EXPECT_EQ(traversal_time_pdf(20.0, 80.0, 120.0, 10.0), 0.0);
    EXPECT_EQ(traversal_time_pdf(20.1, 80.0, 120.0, 10.0), 0.0);
}

TEST(TraversalTimePdfTest, IntegratesToOneDespiteTheSingularEdge) {
    // unequal radii: 1/sqrt singularity at t_min; equal radii: smooth at 0
    const struct {
        double r1, r2, v;
    } cases[] = {{80.0, 120.0, 10.0}, {100.0, 100.0, 10.0}, {30.0, 250.0, 3.0}};
    for (const auto& c : cases) {
        const TimeSupport s = time_support(c.r1, c.r2, c.v);
        const double mass = vho_test::integrate(
            [&](double t) { return traversal_time_pdf(t, c.r1, c.r2, c.v); }, s.t_min,
            s.t_max, 0.0, 1e-9);
        EXPECT_NEAR(mass, 1.0, 1e-6) << "r1=" << c.r1 << " r2=" << c.r2 << " v=" << c.v;
    }
}

TEST(TraversalTimePdfTest, ReproducesTheMeanDwell) {
    const double mean = vho_test::integrate(
        [](double t) { return t * traversal_time_pdf(t, 100.0, 100.0, 10.0); }, 0.0, 20.0,
        0.0, 1e-10);
    EXPECT_NEAR(mean, kMeanDwell, 1e-8 * kMeanDwell);
}

TEST(TraversalTimeCdfTest, MatchesTheReferencePointAndTheEdges) {
    EXPECT_NEAR(traversal_time_cdf(10.0, 80.0, 120.0, 10.0), kCdfAt10, 1e-12 * kCdfAt10);
    EXPECT_EQ(traversal_time_cdf(4.0, 80.0, 120.0, 10.0), 0.0);
    EXPECT_EQ(traversal_time_cdf(20.0, 80.0, 120.0, 10.0), 1.0);
    EXPECT_EQ(traversal_time_cdf(0.0, 80.0, 120.0, 10.0), 0.0);
    EXPECT_EQ(traversal_time_cdf(25.0, 80.0, 120.0, 10.0), 1.0);
}

TEST(TraversalTimeCdfTest, IsThePdfIntegral) {
    for (const double t : {5.0, 8.0, 12.0, 19.0}) {
        const double mass = vho_test::integrate(
            [](double x) { return traversal_time_pdf(x, 80.0, 120.0, 10.0); }, 4.0, t, 0.0,
            1e-10);
        EXPECT_NEAR(mass, traversal_time_cdf(t, 80.0, 120.0, 10.0), 1e-8);
    }
}

TEST(TraversalTimeCdfTest, MonotoneAcrossTheSupport) {
    double last = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double t = 4.0 + 16.0 * i / 200.0;
        const double f = traversal_time_cdf(t, 80.0, 120.0, 10.0);
        ASSERT_GE(f, last);
        last = f;
    }
    EXPECT_EQ(last, 1.0);
}

TEST(ThresholdTest, MatchesTheReferenceValues) {
    const HandoverTiming timing(1.0, 1.0);
    const ProbabilityTargets targets(0.02, 0.01);
    const Thresholds t = compute_thresholds(targets, timing, 100.0, 100.0, 10.0);
    EXPECT_NEAR(t.n, kThresholdN, 1e-12 * kThresholdN);
    EXPECT_NEAR(t.m, kThresholdM, 1e-12 * kThresholdM);
    EXPECT_GT(t.n, t.m);
}

TEST(ThresholdTest, ZeroTargetsReturnTheLatencyBound) {
    const HandoverTiming timing(1.0, 1.0);
    const ProbabilityTargets zero(0.0, 0.0);
    const Thresholds t = compute_thresholds(zero, timing, 100.0, 100.0, 10.0);
    EXPECT_EQ(t.n, 2.0);
    EXPECT_EQ(t.m, 1.0);
    // when the latency exceeds the widest traversal, the support edge wins
    const Thresholds clipped = compute_thresholds(zero, timing, 5.0, 5.0, 10.0);
    EXPECT_EQ(clipped.n, 1.0);
    EXPECT_EQ(clipped.m, 1.0);
}

TEST(ThresholdTest, RoundTripsTheTargetProbabilities) {
    // support is [0.8, 4] s, so both latency anchors carry positive mass
    const HandoverTiming timing(1.0, 1.0);
    for (const double p : {0.005, 0.01, 0.02, 0.05}) {
        const ProbabilityTargets targets(p, p);
        const double n = threshold_n(targets, timing, 80.0, 120.0, 50.0);
        EXPECT_NEAR(prob_unnecessary(n, timing, 80.0, 120.0, 50.0), p, 1e-10);
        const double m = threshold_m(targets, timing, 80.0, 120.0, 50.0);
        EXPECT_NEAR(prob_failure(m, timing, 80.0, 120.0, 50.0), p, 1e-10);
    }
}

TEST(ThresholdTest, UnachievableExactlyWhenTheTargetExceedsTheMass) {
    const HandoverTiming timing(1.0, 1.0);
    // P(T <= 1) at r=100, v=10 is about 0.0627: the failure target cannot
    // exceed it
    EXPECT_THROW(
        threshold_m(ProbabilityTargets(0.02, 0.0627), timing, 100.0, 100.0, 10.0),
        UnachievableError);
    EXPECT_NO_THROW(
        threshold_m(ProbabilityTargets(0.02, 0.0626), timing, 100.0, 100.0, 10.0));

    const double available = prob_failure(0.0, timing, 100.0, 100.0, 10.0);
    EXPECT_NEAR(available, kMassBelowOneSecond, 1e-12);
    EXPECT_NO_THROW(
        threshold_m(ProbabilityTargets(0.0, available), timing, 100.0, 100.0, 10.0));
    EXPECT_THROW(threshold_m(ProbabilityTargets(0.0, std::nextafter(available, 1.0)), timing,
                             100.0, 100.0, 10.0),
                 UnachievableError);
}

TEST(ThresholdTest, FailureAnchorVariantsAreOrdered) {
    const HandoverTiming timing(1.0, 1.0);
    const ProbabilityTargets targets(0.02, 0.01);
    const double entry =
        threshold_m(targets, timing, 100.0, 100.0, 10.0, FailureAnchor::entry_latency);
    const double total =
        threshold_m(targets, timing, 100.0, 100.0, 10.0, FailureAnchor::total_latency);
    // the combined-latency anchor spends the probability budget on a wider
    // angle window, so its guard sits higher
    EXPECT_GT(total, entry);
    EXPECT_NEAR(prob_failure(entry, timing, 100.0, 100.0, 10.0), 0.01, 1e-10);
}

TEST(ProbabilityWindowTest, ValidatesTheThresholdRange) {
    const HandoverTiming timing(1.0, 1.0);
    EXPECT_THROW(prob_unnecessary(-0.1, timing, 100.0, 100.0, 10.0), std::invalid_argument);
    EXPECT_THROW(prob_unnecessary(2.1, timing, 100.0, 100.0, 10.0), std::invalid_argument);
    EXPECT_THROW(prob_failure(1.1, timing, 100.0, 100.0, 10.0), std::invalid_argument);
    // threshold at the latency bound leaves no window
    EXPECT_EQ(prob_unnecessary(2.0, timing, 100.0, 100.0, 10.0), 0.0);
}

TEST(DecideHandoverTest, InitiatesOnlyAboveBothGuards) {
    const Thresholds guards{1.6, 0.8};
    EXPECT_EQ(decide_handover(1.7, guards), HandoverDecision::initiate);
    EXPECT_EQ(decide_handover(1.6, guards), HandoverDecision::reject);
    EXPECT_EQ(decide_handover(0.9, guards), HandoverDecision::reject);
    EXPECT_THROW(decide_handover(-0.1, guards), std::invalid_argument);
}

TEST(TabulateTest, GridSpansTheSupportExactly) {
    const auto table = tabulate_traversal_time(80.0, 120.0, 10.0, 101);
    ASSERT_EQ(table.size(), 101u);
    EXPECT_EQ(table.front().t_s, 4.0);
    EXPECT_EQ(table.back().t_s, 20.0);
    EXPECT_EQ(table.back().cdf, 1.0);
    double last_cdf = -1.0;
    for (const auto& row : table) {
        ASSERT_GE(row.pdf, 0.0);
        ASSERT_TRUE(std::isfinite(row.pdf));
        ASSERT_GE(row.cdf, last_cdf);
        last_cdf = row.cdf;
    }
    EXPECT_THROW(tabulate_traversal_time(80.0, 120.0, 10.0, 1), std::invalid_argument);
}

}  // namespace
