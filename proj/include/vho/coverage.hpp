#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "vho/errors.hpp"
#include "vho/math.hpp"
#include "vho/rng.hpp"

namespace vho {

/// Log-distance path loss with lognormal shadowing, anchored at a reference
/// distance. Powers in dBm, losses in dB. Defaults are demo values, not
/// measurements.
struct PathLossModel {
    double tx_power_dbm = 20.0;
    double sensitivity_dbm = -90.0;
    double pl_d0_db = 40.0;     // loss at the reference distance
    double beta = 3.5;          // path loss exponent
    double sigma_sh_db = 6.0;   // shadowing standard deviation
    double d0_m = 1.0;          // reference distance
};

inline void validate(const PathLossModel& model) {
    if (!(model.d0_m > 0.0)) {
        throw std::invalid_argument("PathLossModel: reference distance must be positive");
    }
    if (!(model.beta > 0.0)) {
        throw std::invalid_argument("PathLossModel: path loss exponent must be positive");
    }
    if (!(model.sigma_sh_db >= 0.0)) {
        throw std::invalid_argument("PathLossModel: shadowing sigma must be non-negative");
    }
}

/// Median received power at distance d, shadowing excluded. Strictly
/// decreasing in d.
inline double mean_rss(const PathLossModel& model, double d) {
    validate(model);
    if (!(d >= model.d0_m)) {
        throw std::invalid_argument("mean_rss: distance must not be below the reference");
    }
    return model.tx_power_dbm -
           (model.pl_d0_db + 10.0 * model.beta * std::log10(d / model.d0_m));
}

/// One received power draw at distance d, shadowing included.
template <class URBG>
double sample_rss(const PathLossModel& model, double d, URBG& rng) {
    const double mean = mean_rss(model, d);
    if (model.sigma_sh_db == 0.0) {
        return mean;
    }
    return mean + model.sigma_sh_db * standard_normal(rng);
}

/// Probability that the received power at distance d clears the sensitivity.
/// Non-increasing in d.
inline double coverage_probability(const PathLossModel& model, double d) {
    const double margin = mean_rss(model, d) - model.sensitivity_dbm;
    if (model.sigma_sh_db == 0.0) {
        return margin >= 0.0 ? 1.0 : 0.0;
    }
    return gauss_upper_tail(-margin / model.sigma_sh_db);
}

/// Distance at which the coverage probability equals p. Deterministic
/// shadowing admits only the median contour.
inline double contour_radius(const PathLossModel& model, double p) {
    validate(model);
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("contour_radius: probability must lie in (0, 1)");
    }
    if (model.sigma_sh_db == 0.0 && p != 0.5) {
        throw DomainError("contour_radius: zero shadowing admits only p = 0.5");
    }
    const double quantile = model.sigma_sh_db == 0.0 ? 0.0 : normal_quantile(p);
    const double target_mean = model.sensitivity_dbm + model.sigma_sh_db * quantile;
    const double exponent =
        (model.tx_power_dbm - model.pl_d0_db - target_mean) / (10.0 * model.beta);
    const double d = model.d0_m * std::pow(10.0, exponent);
    if (d < model.d0_m) {
        throw NoContourError("contour_radius: contour lies inside the reference distance");
    }
    return d;
}

/// One contour-walk RSS reading; field order mirrors the trace CSV columns.
struct RssSample {
    double angle_rad;
    double rss_dbm;
};

/// One contour entry; field order mirrors the contours CSV columns.
struct ContourPoint {
    double p;
    double radius_m;
};

/// Received power while circling the p-contour: evenly spaced angles, one
/// independent shadowing draw per point. The above-sensitivity fraction
/// tends to p as n_points grows.
template <class URBG>
std::vector<RssSample> rss_trace_along_contour(const PathLossModel& model, double p,
                                               std::size_t n_points, URBG& rng) {
    if (n_points < 1) {
        throw std::invalid_argument("rss_trace_along_contour: need at least one point");
    }
    const double d = contour_radius(model, p);
    std::vector<RssSample> trace;
    trace.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double angle = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_points);
        trace.push_back({angle, sample_rss(model, d, rng)});
    }
    return trace;
}

}  // namespace vho
