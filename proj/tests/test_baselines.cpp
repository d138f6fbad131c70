#include "vho/baselines.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "vho/errors.hpp"
#include "vho/rng.hpp"

namespace {

using namespace vho;

// Reference value computed with 30-digit arithmetic: R=100, v=10, tau=2,
// P=0.02. Both published formulas reduce to the same expression.
constexpr double kCircularThreshold = 1.3739469072770558742;

TEST(BaselineTest, MatchesTheReferencePoint) {
    EXPECT_NEAR(yan_threshold(100.0, 10.0, 2.0, 0.02), kCircularThreshold,
                1e-12 * kCircularThreshold);
    EXPECT_NEAR(hussain_threshold(100.0, 10.0, 2.0, 0.02), kCircularThreshold,
                1e-12 * kCircularThreshold);
}

TEST(BaselineTest, ZeroTargetReturnsTheLatency) {
    EXPECT_NEAR(yan_threshold(100.0, 10.0, 2.0, 0.0), 2.0, 1e-12);
    EXPECT_NEAR(hussain_threshold(100.0, 10.0, 2.0, 0.0), 2.0, 1e-12);
}

TEST(BaselineTest, TheTwoFormulasAgreeEverywhere) {
    auto rng = make_block_engine(13, 0, 0);
    for (int i = 0; i < 2000; ++i) {
        const double radius = 20.0 + 480.0 * canonical(rng);
        const double v = 0.5 + 29.5 * canonical(rng);
        // keep the latency strictly inside the disc so both formulas apply
        const double tau = (2.0 * radius / v) * (0.05 + 0.9 * canonical(rng));
        const double p_max = 2.0 * std::asin(v * tau / (2.0 * radius)) / kPi;
        const double p = 0.9 * p_max * canonical(rng);
        const double a = yan_threshold(radius, v, tau, p);
        const double b = hussain_threshold(radius, v, tau, p);
        ASSERT_NEAR(a, b, 1e-9 * std::max(1.0, a))
            << "radius=" << radius << " v=" << v << " tau=" << tau << " p=" << p;
    }
}

TEST(BaselineTest, NonIncreasingInTheTarget) {
    double last = yan_threshold(100.0, 10.0, 2.0, 0.0);
    for (double p = 0.005; p < 0.062; p += 0.005) {
        const double t = yan_threshold(100.0, 10.0, 2.0, p);
        ASSERT_LT(t, last);
        last = t;
    }
}

TEST(BaselineTest, RejectsGeometryTheDiscCannotHost) {
    // latency longer than the widest traversal: v tau > 2R
    EXPECT_THROW(yan_threshold(100.0, 10.0, 21.0, 0.01), DomainError);
    EXPECT_THROW(hussain_threshold(100.0, 10.0, 21.0, 0.01), DomainError);
    // the diameter case: the sine form still works, the tangent form poles
    EXPECT_NEAR(yan_threshold(100.0, 10.0, 20.0, 0.0), 20.0, 1e-12);
    EXPECT_THROW(hussain_threshold(100.0, 10.0, 20.0, 0.0), DomainError);
}

TEST(BaselineTest, RejectsTargetsBeyondTheLatencyAngle) {
    // asin(0.1) is about 0.1002 rad, so P above 2*0.1002/pi fails
    EXPECT_THROW(yan_threshold(100.0, 10.0, 2.0, 0.064), DomainError);
    EXPECT_THROW(hussain_threshold(100.0, 10.0, 2.0, 0.064), DomainError);
    EXPECT_NO_THROW(yan_threshold(100.0, 10.0, 2.0, 0.0637));
    EXPECT_THROW(yan_threshold(100.0, 10.0, 2.0, 1.5), std::invalid_argument);
    EXPECT_THROW(yan_threshold(0.0, 10.0, 2.0, 0.01), std::invalid_argument);
}

TEST(CompareModelsTest, EmitsOneRowPerModelPerVelocity) {
    const SimConfig config{
        .radius_model = CellRadiusModel(100.0, 10.0),
        .timing = HandoverTiming(1.0, 1.0),
        .targets = ProbabilityTargets(0.02, 0.01),
        .velocity_grid = {10.0, 5.0},
        .v_min = 0.0,
        .v_max = 0.0,
        .iterations = 50000,
        .seed = 7,
        .radius_mode = RadiusMode::resampled,
        .velocity_mode = VelocityMode::grid,
        .threads = 0,
    };
    const auto rows = compare_models(config);
    ASSERT_EQ(rows.size(), 6u);
    // ascending velocity, model order proposed / yan / hussain within each
    EXPECT_EQ(rows[0].velocity, 5.0);
    EXPECT_EQ(rows[3].velocity, 10.0);
    EXPECT_EQ(rows[0].model, CompareModel::proposed);
    EXPECT_EQ(rows[1].model, CompareModel::yan);
    EXPECT_EQ(rows[2].model, CompareModel::hussain);
    for (const auto& row : rows) {
        ASSERT_TRUE(row.threshold.has_value());
        ASSERT_TRUE(row.p_u_empirical.has_value());
        ASSERT_TRUE(row.se_pu.has_value());
    }
}

TEST(CompareModelsTest, SharedTrialsGiveTheTwinBaselinesEqualRates) {
    const SimConfig config{
        .radius_model = CellRadiusModel(100.0, 10.0),
        .timing = HandoverTiming(1.0, 1.0),
        .targets = ProbabilityTargets(0.02, 0.01),
        .velocity_grid = {10.0},
        .v_min = 0.0,
        .v_max = 0.0,
        .iterations = 50000,
        .seed = 11,
        .radius_mode = RadiusMode::resampled,
        .velocity_mode = VelocityMode::grid,
        .threads = 0,
    };
    const auto rows = compare_models(config);
    ASSERT_EQ(rows.size(), 3u);
    // identical thresholds against identical trials: the twin baselines
    // cannot disagree
    EXPECT_EQ(*rows[1].p_u_empirical, *rows[2].p_u_empirical);
    // the proposed model uses a different threshold, so it differs
    EXPECT_NE(*rows[0].threshold, *rows[1].threshold);
}

TEST(CompareModelsTest, UndefinedModelsGetEmptyCells) {
    const SimConfig config{
        .radius_model = CellRadiusModel(100.0, 10.0),
        .timing = HandoverTiming(1.0, 1.0),
        .targets = ProbabilityTargets(0.02, 0.01),
        // at 150 m/s the 2 s latency exceeds the 200 m disc diameter
        .velocity_grid = {150.0, 10.0},
        .v_min = 0.0,
        .v_max = 0.0,
        .iterations = 20000,
        .seed = 3,
        .radius_mode = RadiusMode::resampled,
        .velocity_mode = VelocityMode::grid,
        .threads = 0,
    };
    const auto rows = compare_models(config);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_TRUE(rows[3].threshold.has_value());   // proposed still works
    EXPECT_FALSE(rows[4].threshold.has_value());  // yan
    EXPECT_FALSE(rows[4].p_u_empirical.has_value());
    EXPECT_FALSE(rows[5].threshold.has_value());  // hussain
}

}  // namespace
