#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "vho/errors.hpp"
#include "vho/geometry.hpp"
#include "vho/math.hpp"

namespace vho {

/// Handover latencies: into the cell (tau_a), out of it (tau_d).
class HandoverTiming {
  public:
    HandoverTiming(double tau_a, double tau_d) : tau_a_(tau_a), tau_d_(tau_d) {
        if (!(tau_a > 0.0 && tau_d > 0.0)) {
            throw std::invalid_argument("HandoverTiming: latencies must be positive");
        }
    }

    double tau_a() const { return tau_a_; }
    double tau_d() const { return tau_d_; }
    /// Combined in + out latency; a dwell shorter than this makes the
    /// handover pointless.
    double tau_t() const { return tau_a_ + tau_d_; }

  private:
    double tau_a_;
    double tau_d_;
};

/// Design targets for the two failure modes.
class ProbabilityTargets {
  public:
    ProbabilityTargets(double p_u, double p_f) : p_u_(p_u), p_f_(p_f) {
        if (!(p_u >= 0.0 && p_u <= 1.0 && p_f >= 0.0 && p_f <= 1.0)) {
            throw std::invalid_argument("ProbabilityTargets: probabilities must lie in [0, 1]");
        }
    }

    double p_u() const { return p_u_; }
    double p_f() const { return p_f_; }

  private:
    double p_u_;
    double p_f_;
};

/// Minimum-dwell guards: n for unnecessary handover, m for handover failure.
struct Thresholds {
    double n;  // seconds
    double m;  // seconds
};

enum class HandoverDecision { initiate, reject };

/// Which latency anchors the quadratic solve for the failure threshold.
/// entry_latency is self-consistent with the failure criterion (dwell vs
/// the handover-in latency); total_latency reproduces a published variant
/// that reuses the combined-latency angle and carries no round-trip
/// guarantee.
enum class FailureAnchor { entry_latency, total_latency };

/// Traverse-angle density 2 (pi - theta) / pi^2 on [0, pi], 0 elsewhere.
inline double theta_pdf(double theta) {
    if (theta < 0.0 || theta > kPi) {
        return 0.0;
    }
    return 2.0 * (kPi - theta) / (kPi * kPi);
}

/// Traverse-angle CDF (2 pi - theta) theta / pi^2, clamped outside [0, pi].
inline double theta_cdf(double theta) {
    if (theta <= 0.0) {
        return 0.0;
    }
    if (theta >= kPi) {
        return 1.0;
    }
    return (2.0 * kPi - theta) * theta / (kPi * kPi);
}

/// Dwell-time density obtained from the angle density by the change of
/// variables t = chord(theta) / v:
///
///   f(t) = 4 v^2 t (pi - arccos((r1^2 + r2^2 - t^2 v^2) / (2 r1 r2)))
///          / (pi^2 sqrt(4 r1^2 r2^2 - (r1^2 + r2^2 - t^2 v^2)^2))
///
/// on the open interval (|r1-r2|/v, (r1+r2)/v), 0 outside. The lower edge
/// carries an integrable 1/sqrt singularity when r1 != r2.
inline double traversal_time_pdf(double t, double r1, double r2, double v) {
    const TimeSupport support = time_support(r1, r2, v);
    if (!(t > support.t_min && t < support.t_max)) {
        return 0.0;
    }
    const double tv = t * v;
    const double delta = std::abs(r1 - r2);
    const double sum = r1 + r2;
    // 4 r1^2 r2^2 - (r1^2 + r2^2 - t^2 v^2)^2, factored to keep precision
    // near the support edges
    const double num = (tv - delta) * (tv + delta);
    const double den = (sum - tv) * (sum + tv);
    if (num <= 0.0 || den <= 0.0) {
        return 0.0;
    }
    const double theta = theta_from_time(r1, r2, v, t);
    return 4.0 * v * v * t * (kPi - theta) / (kPi * kPi * std::sqrt(num * den));
}

/// Dwell-time CDF: the angle CDF composed with the angle-from-time map.
inline double traversal_time_cdf(double t, double r1, double r2, double v) {
    const TimeSupport support = time_support(r1, r2, v);
    if (t <= support.t_min) {
        return 0.0;
    }
    if (t >= support.t_max) {
        return 1.0;
    }
    return theta_cdf(theta_from_time(r1, r2, v, t));
}

namespace detail {

// Angle at a latency bound, clamped to [0, pi] outside the time support.
inline double angle_at_latency(double tau, double r1, double r2, double v) {
    const TimeSupport support = time_support(r1, r2, v);
    if (tau >= support.t_max) {
        return kPi;
    }
    if (tau <= support.t_min) {
        return 0.0;
    }
    return theta_from_time(r1, r2, v, tau);
}

// Inverts P(threshold < T <= tau) = p for the threshold. With z the angle
// at tau, the angle CDF difference gives the quadratic
//   y^2 - 2 pi y + (2 pi z - z^2 - p pi^2) = 0,
// whose minus root y = pi - sqrt((pi - z)^2 + p pi^2) is the one satisfying
// 0 <= y <= z. The plus root exceeds pi.
inline double invert_time_threshold(double p, double tau, double r1, double r2, double v,
                                    const char* what) {
    const TimeSupport support = time_support(r1, r2, v);
    const double z = angle_at_latency(tau, r1, r2, v);
    const double available = theta_cdf(z);
    if (p > available) {
        throw UnachievableError(std::string(what) + ": target probability " +
                                std::to_string(p) + " exceeds the mass " +
                                std::to_string(available) + " available below the latency bound");
    }
    if (p == 0.0) {
        return std::min(tau, support.t_max);
    }
    const double pz = kPi - z;
    double y = kPi - std::sqrt(pz * pz + p * kPi * kPi);
    y = std::max(y, 0.0);
    return chord_length({r1, r2, y}) / v;
}

}  // namespace detail

/// P(n < T <= tau_t): probability that an initiated handover turns out
/// unnecessary when handovers below dwell n are suppressed.
inline double prob_unnecessary(double n, const HandoverTiming& timing, double r1, double r2,
                               double v) {
    if (!(n >= 0.0) || n > timing.tau_t()) {
        throw std::invalid_argument("prob_unnecessary: threshold must lie in [0, tau_t]");
    }
    const double p =
        traversal_time_cdf(timing.tau_t(), r1, r2, v) - traversal_time_cdf(n, r1, r2, v);
    return std::clamp(p, 0.0, 1.0);
}

/// P(m < T <= tau_a): probability that the dwell is too short to even
/// complete the inbound handover, with dwells below m suppressed.
inline double prob_failure(double m, const HandoverTiming& timing, double r1, double r2,
                           double v) {
    if (!(m >= 0.0) || m > timing.tau_a()) {
        throw std::invalid_argument("prob_failure: threshold must lie in [0, tau_a]");
    }
    const double p =
        traversal_time_cdf(timing.tau_a(), r1, r2, v) - traversal_time_cdf(m, r1, r2, v);
    return std::clamp(p, 0.0, 1.0);
}

/// Dwell threshold N with P(N < T <= tau_t) equal to the unnecessary-handover
/// target. Throws UnachievableError when the target exceeds the probability
/// mass below tau_t.
inline double threshold_n(const ProbabilityTargets& targets, const HandoverTiming& timing,
                          double r1, double r2, double v) {
    return detail::invert_time_threshold(targets.p_u(), timing.tau_t(), r1, r2, v,
                                         "threshold_n");
}

/// Dwell threshold M with P(M < T <= tau_a) equal to the failure target.
inline double threshold_m(const ProbabilityTargets& targets, const HandoverTiming& timing,
                          double r1, double r2, double v,
                          FailureAnchor anchor = FailureAnchor::entry_latency) {
    if (anchor == FailureAnchor::entry_latency) {
        return detail::invert_time_threshold(targets.p_f(), timing.tau_a(), r1, r2, v,
                                             "threshold_m");
    }
    // Published variant: the quadratic reuses the combined-latency angle.
    const double z = detail::angle_at_latency(timing.tau_t(), r1, r2, v);
    if (targets.p_f() > theta_cdf(z)) {
        throw UnachievableError("threshold_m: target exceeds the mass below tau_t");
    }
    const double pz = kPi - z;
    const double q = std::max(kPi - std::sqrt(pz * pz + targets.p_f() * kPi * kPi), 0.0);
    return chord_length({r1, r2, q}) / v;
}

/// Both guards at once.
inline Thresholds compute_thresholds(const ProbabilityTargets& targets,
                                     const HandoverTiming& timing, double r1, double r2,
                                     double v,
                                     FailureAnchor anchor = FailureAnchor::entry_latency) {
    return {threshold_n(targets, timing, r1, r2, v),
            threshold_m(targets, timing, r1, r2, v, anchor)};
}

/// Initiate only when the predicted dwell strictly exceeds both guards.
inline HandoverDecision decide_handover(double predicted_dwell_s, const Thresholds& thresholds) {
    if (!(predicted_dwell_s >= 0.0)) {
        throw std::invalid_argument("decide_handover: predicted dwell must be non-negative");
    }
    return predicted_dwell_s > std::max(thresholds.n, thresholds.m)
               ? HandoverDecision::initiate
               : HandoverDecision::reject;
}

struct PdfSample {
    double t_s;
    double pdf;
    double cdf;
};

/// Tabulates the dwell-time density and CDF on an n-point grid spanning the
/// time support (endpoints included).
inline std::vector<PdfSample> tabulate_traversal_time(double r1, double r2, double v,
                                                      std::size_t n_points) {
    if (n_points < 2) {
        throw std::invalid_argument("tabulate_traversal_time: need at least 2 grid points");
    }
    const TimeSupport support = time_support(r1, r2, v);
    std::vector<PdfSample> table(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(n_points - 1);
        const double t = (i + 1 == n_points) ? support.t_max
                                             : support.t_min + frac * support.width();
        table[i] = {t, traversal_time_pdf(t, r1, r2, v), traversal_time_cdf(t, r1, r2, v)};
    }
    return table;
}

}  // namespace vho
