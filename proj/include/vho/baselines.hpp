#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "vho/errors.hpp"
#include "vho/math.hpp"
#include "vho/montecarlo.hpp"

namespace vho {

namespace detail {

inline void check_baseline_args(double radius, double v, double tau, double p) {
    if (!(radius > 0.0)) {
        throw std::invalid_argument("baseline: radius must be positive");
    }
    if (!(v > 0.0)) {
        throw std::invalid_argument("baseline: velocity must be positive");
    }
    if (!(tau > 0.0)) {
        throw std::invalid_argument("baseline: latency must be positive");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("baseline: probability must lie in [0, 1]");
    }
}

}  // namespace detail

/// Circular-cell dwell threshold that backs the target probability off the
/// latency angle on the sine scale. Assumes a disc of the given radius, so
/// it ignores radius spread entirely.
inline double yan_threshold(double radius, double v, double tau, double p) {
    detail::check_baseline_args(radius, v, tau, p);
    const double x = v * tau / (2.0 * radius);
    if (x > 1.0) {
        throw DomainError("yan_threshold: latency exceeds the widest traversal");
    }
    const double angle = std::asin(x) - 0.5 * kPi * p;
    if (angle < 0.0) {
        throw DomainError("yan_threshold: target probability too large for this geometry");
    }
    return (2.0 * radius / v) * std::sin(angle);
}

/// Circular-cell dwell threshold phrased through the tangent of the latency
/// angle. Algebraically it reduces to the sine-scale rule; keeping both
/// preserves the published pair for comparison runs.
inline double hussain_threshold(double radius, double v, double tau, double p) {
    detail::check_baseline_args(radius, v, tau, p);
    const double den_sq = 4.0 * radius * radius - v * v * tau * tau;
    if (!(den_sq > 0.0)) {
        throw DomainError("hussain_threshold: latency exceeds the widest traversal");
    }
    const double angle = std::atan(v * tau / std::sqrt(den_sq)) - 0.5 * kPi * p;
    if (angle < 0.0) {
        throw DomainError("hussain_threshold: target probability too large for this geometry");
    }
    const double k = std::tan(angle);
    return 2.0 * radius * k / (v * std::sqrt(1.0 + k * k));
}

enum class CompareModel { proposed, yan, hussain };

inline constexpr std::string_view to_string(CompareModel model) {
    switch (model) {
        case CompareModel::proposed: return "proposed";
        case CompareModel::yan: return "yan";
        case CompareModel::hussain: return "hussain";
    }
    return "unknown";
}

/// One comparison entry; field order mirrors the compare CSV columns.
/// Empty optionals mean the model has no valid threshold at this velocity.
struct CompareRow {
    double velocity;
    CompareModel model;
    std::optional<double> threshold;
    std::optional<double> p_u_empirical;
    std::optional<double> se_pu;
};

/// Runs each model's threshold against the same simulated traversals, one
/// stream per velocity, so differences in the empirical rates come from the
/// thresholds alone. Every velocity gets one row per model; rows for models
/// whose threshold is undefined there carry empty values. Velocities are
/// processed in ascending order.
inline std::vector<CompareRow> compare_models(const SimConfig& config) {
    validate(config);
    if (config.velocity_grid.empty()) {
        throw std::invalid_argument("compare_models: velocity grid must not be empty");
    }
    std::vector<double> grid = config.velocity_grid;
    std::sort(grid.begin(), grid.end());

    const double mu = config.radius_model.mu_r();
    const double tau_t = config.timing.tau_t();
    const double p_u = config.targets.p_u();
    const double n = static_cast<double>(config.iterations);

    std::vector<CompareRow> rows;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = grid[i];
        const auto run = [&](CompareModel model, const std::optional<double>& threshold) {
            if (!threshold) {
                rows.push_back({v, model, {}, {}, {}});
                return;
            }
            const detail::TrialCounts counts =
                detail::count_trials(config, v, Thresholds{*threshold, 0.0}, i);
            const double pu_hat = static_cast<double>(counts.unnecessary) / n;
            rows.push_back(
                {v, model, threshold, pu_hat, detail::binomial_se(pu_hat, config.iterations)});
        };
        const auto guarded = [](auto&& compute) -> std::optional<double> {
            try {
                return compute();
            } catch (const DomainError&) {
                return std::nullopt;
            } catch (const UnachievableError&) {
                return std::nullopt;
            }
        };
        run(CompareModel::proposed,
            guarded([&] { return threshold_n(config.targets, config.timing, mu, mu, v); }));
        run(CompareModel::yan, guarded([&] { return yan_threshold(mu, v, tau_t, p_u); }));
        run(CompareModel::hussain,
            guarded([&] { return hussain_threshold(mu, v, tau_t, p_u); }));
    }
    return rows;
}

}  // namespace vho
