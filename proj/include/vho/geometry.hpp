#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "vho/errors.hpp"
#include "vho/math.hpp"
#include "vho/rng.hpp"

namespace vho {

// Tolerance on the cosine argument at the support edges; floating-point
// noise there must clamp, not raise.
inline constexpr double kCosClampTol = 1e-9;

/// Gaussian cell-radius model. Draws are truncated to (0, inf) by rejection;
/// requiring mu_r > 4 sigma_r keeps the truncation bias below 1e-4 relative,
/// so closed-form results that ignore truncation stay valid to test tolerance.
class CellRadiusModel {
  public:
    CellRadiusModel(double mu_r, double sigma_r) : mu_r_(mu_r), sigma_r_(sigma_r) {
        if (!(mu_r > 0.0)) {
            throw std::invalid_argument("CellRadiusModel: mu_r must be positive");
        }
        if (!(sigma_r >= 0.0)) {
            throw std::invalid_argument("CellRadiusModel: sigma_r must be non-negative");
        }
        if (!(mu_r - 4.0 * sigma_r > 0.0)) {
            throw std::invalid_argument(
                "CellRadiusModel: mu_r must exceed 4*sigma_r to keep positive-radius "
                "truncation negligible");
        }
    }

    double mu_r() const { return mu_r_; }
    double sigma_r() const { return sigma_r_; }

  private:
    double mu_r_;
    double sigma_r_;
};

/// One entry/exit realization: entry radius, exit radius, traverse angle.
struct TraversalGeometry {
    double r1;     // meters
    double r2;     // meters
    double theta;  // radians, in [0, pi]
};

inline void validate(const TraversalGeometry& g) {
    if (!(g.r1 > 0.0 && g.r2 > 0.0)) {
        throw std::invalid_argument("TraversalGeometry: radii must be positive");
    }
    if (!(g.theta >= 0.0 && g.theta <= kPi)) {
        throw std::invalid_argument("TraversalGeometry: theta must lie in [0, pi]");
    }
}

/// Reachable traversal-time interval for a given geometry and speed.
struct TimeSupport {
    double t_min;  // seconds, |r1 - r2| / v
    double t_max;  // seconds, (r1 + r2) / v

    double width() const { return t_max - t_min; }
};

struct BoundaryPoint {
    double angle_rad;
    double radius_m;
};

/// One truncated-Gaussian radius draw, strictly positive.
template <class URBG>
double sample_radius(const CellRadiusModel& model, URBG& rng) {
    if (model.sigma_r() == 0.0) {
        return model.mu_r();
    }
    for (;;) {
        const double r = model.mu_r() + model.sigma_r() * standard_normal(rng);
        if (r > 0.0) {
            return r;
        }
    }
}

/// Inverse CDF of the traverse angle: theta = pi (1 - sqrt(1 - u)).
/// The angle |Theta_D - Theta_A| of two independent U[0, pi] endpoints has
/// CDF (2 pi - theta) theta / pi^2, and this is its quantile function.
inline double theta_quantile(double u) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw std::invalid_argument("theta_quantile: u must lie in [0, 1]");
    }
    return kPi * (1.0 - std::sqrt(1.0 - u));
}

/// Traverse-angle draw with density 2 (pi - theta) / pi^2 on [0, pi].
template <class URBG>
double sample_theta(URBG& rng) {
    return theta_quantile(canonical(rng));
}

/// Chord between the entry and exit points:
/// D = sqrt(r1^2 + r2^2 - 2 r1 r2 cos theta).
/// Evaluated in the half-angle form, which is exact at theta = 0 and pi and
/// avoids cancellation for near-equal radii.
inline double chord_length(const TraversalGeometry& g) {
    validate(g);
    const double diff = g.r1 - g.r2;
    const double s = std::sin(0.5 * g.theta);
    return std::sqrt(diff * diff + 4.0 * g.r1 * g.r2 * s * s);
}

/// Dwell time for a chord traversed at constant speed.
inline double traversal_time(double distance_m, double speed_mps) {
    if (!(speed_mps > 0.0)) {
        throw std::invalid_argument("traversal_time: speed must be positive");
    }
    if (!(distance_m >= 0.0)) {
        throw std::invalid_argument("traversal_time: distance must be non-negative");
    }
    return distance_m / speed_mps;
}

inline TimeSupport time_support(double r1, double r2, double v) {
    if (!(r1 > 0.0 && r2 > 0.0)) {
        throw std::invalid_argument("time_support: radii must be positive");
    }
    if (!(v > 0.0)) {
        throw std::invalid_argument("time_support: speed must be positive");
    }
    return {std::abs(r1 - r2) / v, (r1 + r2) / v};
}

/// Traverse angle recovering a given dwell time:
/// theta = arccos((r1^2 + r2^2 - t^2 v^2) / (2 r1 r2)).
///
/// The arccos argument is clamped when within kCosClampTol of [-1, 1];
/// beyond that the time is outside the reachable interval and
/// OutOfSupportError is raised. Internally the angle is evaluated in the
/// factored half-angle form, which loses far less precision near the
/// support edges than the raw arccos.
inline double theta_from_time(double r1, double r2, double v, double t) {
    if (!(r1 > 0.0 && r2 > 0.0 && v > 0.0)) {
        throw std::invalid_argument("theta_from_time: radii and speed must be positive");
    }
    if (!(t >= 0.0)) {
        throw std::invalid_argument("theta_from_time: time must be non-negative");
    }
    const double tv = t * v;
    const double raw = (r1 * r1 + r2 * r2 - tv * tv) / (2.0 * r1 * r2);
    if (raw > 1.0 + kCosClampTol) {
        throw OutOfSupportError("theta_from_time: t=" + std::to_string(t) +
                                " is below the minimum chord time |r1-r2|/v");
    }
    if (raw < -1.0 - kCosClampTol) {
        throw OutOfSupportError("theta_from_time: t=" + std::to_string(t) +
                                " is above the maximum chord time (r1+r2)/v");
    }
    const double delta = std::abs(r1 - r2);
    const double sum = r1 + r2;
    const double num = (tv - delta) * (tv + delta);  // t^2 v^2 - (r1-r2)^2
    const double den = (sum - tv) * (sum + tv);      // (r1+r2)^2 - t^2 v^2
    if (num <= 0.0) {
        return 0.0;
    }
    if (den <= 0.0) {
        return kPi;
    }
    return 2.0 * std::atan2(std::sqrt(num), std::sqrt(den));
}

/// Irregular cell boundary: independent truncated-Gaussian radii at evenly
/// spaced angles, optionally smoothed with a circular moving average of
/// `smoothing` points. smoothing <= 1 returns the raw draws.
template <class URBG>
std::vector<BoundaryPoint> generate_boundary(const CellRadiusModel& model,
                                             std::size_t n_points, std::size_t smoothing,
                                             URBG& rng) {
    if (n_points < 8) {
        throw std::invalid_argument("generate_boundary: need at least 8 points");
    }
    if (smoothing >= n_points) {
        throw std::invalid_argument("generate_boundary: smoothing window must be smaller "
                                    "than the point count");
    }

    std::vector<double> raw(n_points);
    for (auto& r : raw) {
        r = sample_radius(model, rng);
    }

    std::vector<BoundaryPoint> out(n_points);
    const auto n = static_cast<std::ptrdiff_t>(n_points);
    const auto w = static_cast<std::ptrdiff_t>(smoothing);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double radius = raw[static_cast<std::size_t>(i)];
        if (w > 1) {
            // centered window of w points, right-heavy when w is even
            double acc = 0.0;
            for (std::ptrdiff_t j = -(w - 1) / 2; j <= w / 2; ++j) {
                acc += raw[static_cast<std::size_t>(((i + j) % n + n) % n)];
            }
            radius = acc / static_cast<double>(w);
        }
        out[static_cast<std::size_t>(i)] = {2.0 * kPi * static_cast<double>(i) /
                                                static_cast<double>(n_points),
                                            radius};
    }
    return out;
}

}  // namespace vho
