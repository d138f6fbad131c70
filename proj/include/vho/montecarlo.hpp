#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "vho/analytic.hpp"
#include "vho/geometry.hpp"
#include "vho/rng.hpp"

namespace vho {

enum class RadiusMode { fixed, resampled };
enum class VelocityMode { grid, sampled };

/// Full experiment description. Identical configs (seed included) yield
/// bit-identical results under any thread count.
struct SimConfig {
    CellRadiusModel radius_model;
    HandoverTiming timing;
    ProbabilityTargets targets;
    std::vector<double> velocity_grid;  // meters/second, first entry is the design point
    double v_min = 0.0;                 // sampled-velocity mode bounds
    double v_max = 0.0;
    std::uint64_t iterations = 1'000'000;
    std::uint64_t seed = 0;
    RadiusMode radius_mode = RadiusMode::resampled;
    VelocityMode velocity_mode = VelocityMode::grid;
    unsigned threads = 0;  // 0 = available parallelism
};

inline void validate(const SimConfig& config) {
    if (config.iterations < 1) {
        throw std::invalid_argument("SimConfig: iterations must be at least 1");
    }
    for (const double v : config.velocity_grid) {
        if (!(v > 0.0)) {
            throw std::invalid_argument("SimConfig: velocity grid values must be positive");
        }
    }
    if (config.velocity_mode == VelocityMode::sampled) {
        if (!(config.v_min > 0.0 && config.v_min <= config.v_max)) {
            throw std::invalid_argument(
                "SimConfig: sampled-velocity mode needs 0 < v_min <= v_max");
        }
    }
}

struct TrialOutcome {
    TraversalGeometry geometry;
    double velocity;   // meters/second
    double dwell;      // seconds
    bool initiated;    // dwell exceeded both guards
    bool unnecessary;  // initiated, but dwell <= tau_t
    bool failed;       // dwell <= tau_a
};

/// One sweep entry; field order mirrors the sweep CSV columns.
struct SweepPoint {
    double velocity;
    double n_threshold;
    double m_threshold;
    double p_u_analytic;
    double p_u_empirical;
    double se_pu;
    double p_f_analytic;
    double p_f_empirical;
    double se_pf;
};

/// Monte-Carlo mean of g over the radius distribution.
template <class F, class URBG>
double empirical_expectation(F&& g, const CellRadiusModel& model, std::uint64_t n, URBG& rng) {
    if (n < 1) {
        throw std::invalid_argument("empirical_expectation: need at least one draw");
    }
    double acc = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        acc += g(sample_radius(model, rng));
    }
    return acc / static_cast<double>(n);
}

/// One traversal: endpoints uniform on [0, pi], radii per the radius mode,
/// dwell = chord / v, decision and outcome flags per the latency semantics.
template <class URBG>
TrialOutcome run_trial(const SimConfig& config, double v, const Thresholds& thresholds,
                       URBG& rng) {
    if (!(v > 0.0)) {
        throw std::invalid_argument("run_trial: velocity must be positive");
    }
    const double theta_a = kPi * canonical(rng);
    const double theta_d = kPi * canonical(rng);
    const double theta = std::abs(theta_d - theta_a);

    double r1 = config.radius_model.mu_r();
    double r2 = r1;
    if (config.radius_mode == RadiusMode::resampled) {
        r1 = sample_radius(config.radius_model, rng);
        r2 = sample_radius(config.radius_model, rng);
    }

    const TraversalGeometry geometry{r1, r2, theta};
    const double dwell = chord_length(geometry) / v;
    const bool initiated = dwell > std::max(thresholds.n, thresholds.m);
    const bool unnecessary = initiated && dwell <= config.timing.tau_t();
    const bool failed = dwell <= config.timing.tau_a();
    return {geometry, v, dwell, initiated, unnecessary, failed};
}

namespace detail {

inline constexpr std::uint64_t kTrialBlockSize = 1u << 16;

struct TrialCounts {
    std::uint64_t initiated = 0;
    std::uint64_t unnecessary = 0;
    std::uint64_t failed = 0;          // dwell <= tau_a
    std::uint64_t failed_above_m = 0;  // m < dwell <= tau_a
};

// Runs config.iterations trials split into fixed-size blocks. Block b uses
// an engine derived from (seed, stream, b), so totals do not depend on how
// blocks are assigned to workers. Counting is integer-only, hence the
// reduction is exact and order-free.
inline TrialCounts count_trials(const SimConfig& config, double velocity,
                                const Thresholds& thresholds, std::uint64_t stream) {
    const std::uint64_t n = config.iterations;
    const std::uint64_t n_blocks = (n + kTrialBlockSize - 1) / kTrialBlockSize;

    unsigned n_workers = config.threads != 0 ? config.threads
                                             : std::max(1u, std::thread::hardware_concurrency());
    n_workers = static_cast<unsigned>(
        std::min<std::uint64_t>(n_workers, std::max<std::uint64_t>(n_blocks, 1)));

    TrialCounts totals;
    std::mutex totals_mutex;
    std::atomic<std::uint64_t> next_block{0};

    const auto worker = [&] {
        TrialCounts local;
        for (;;) {
            const std::uint64_t block = next_block.fetch_add(1);
            if (block >= n_blocks) {
                break;
            }
            auto rng = make_block_engine(config.seed, stream, block);
            const std::uint64_t begin = block * kTrialBlockSize;
            const std::uint64_t end = std::min(begin + kTrialBlockSize, n);
            for (std::uint64_t i = begin; i < end; ++i) {
                double v = velocity;
                if (config.velocity_mode == VelocityMode::sampled) {
                    v = config.v_min + (config.v_max - config.v_min) * canonical(rng);
                }
                const TrialOutcome outcome = run_trial(config, v, thresholds, rng);
                local.initiated += outcome.initiated;
                local.unnecessary += outcome.unnecessary;
                local.failed += outcome.failed;
                local.failed_above_m += outcome.failed && outcome.dwell > thresholds.m;
            }
        }
        const std::lock_guard<std::mutex> lock(totals_mutex);
        totals.initiated += local.initiated;
        totals.unnecessary += local.unnecessary;
        totals.failed += local.failed;
        totals.failed_above_m += local.failed_above_m;
    };

    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    return totals;
}

inline double binomial_se(double p_hat, std::uint64_t n) {
    return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
}

}  // namespace detail

/// Empirical and analytic probabilities at one velocity under the given
/// (already computed) thresholds. The analytic columns are evaluated at the
/// mean radius, which is the closed-form model's operating point.
inline SweepPoint estimate_point(const SimConfig& config, double v, const Thresholds& thresholds,
                                 std::uint64_t stream = 0) {
    validate(config);
    if (!(v > 0.0)) {
        throw std::invalid_argument("estimate_point: velocity must be positive");
    }
    const double mu = config.radius_model.mu_r();
    const detail::TrialCounts counts = detail::count_trials(config, v, thresholds, stream);
    const double n = static_cast<double>(config.iterations);
    const double pu_hat = static_cast<double>(counts.unnecessary) / n;
    const double pf_hat = static_cast<double>(counts.failed_above_m) / n;
    return {v,
            thresholds.n,
            thresholds.m,
            prob_unnecessary(thresholds.n, config.timing, mu, mu, v),
            pu_hat,
            detail::binomial_se(pu_hat, config.iterations),
            prob_failure(thresholds.m, config.timing, mu, mu, v),
            pf_hat,
            detail::binomial_se(pf_hat, config.iterations)};
}

/// Single-point estimate with thresholds designed at this velocity.
inline SweepPoint estimate_point(const SimConfig& config, double v) {
    validate(config);
    const double mu = config.radius_model.mu_r();
    const Thresholds thresholds = compute_thresholds(config.targets, config.timing, mu, mu, v);
    return estimate_point(config, v, thresholds);
}

/// Velocity sweep with thresholds designed once at the first grid velocity
/// and held fixed, which is what makes the curves drift as speed rises.
/// Output is ordered by velocity. In sampled-velocity mode a single
/// aggregate point is returned, with per-trial speeds uniform on
/// [v_min, v_max] and the design point taken from the grid front (or the
/// interval midpoint when no grid is given).
inline std::vector<SweepPoint> sweep_velocity(const SimConfig& config) {
    validate(config);
    const double mu = config.radius_model.mu_r();

    if (config.velocity_mode == VelocityMode::sampled) {
        const double design_v = config.velocity_grid.empty()
                                    ? 0.5 * (config.v_min + config.v_max)
                                    : config.velocity_grid.front();
        const Thresholds thresholds =
            compute_thresholds(config.targets, config.timing, mu, mu, design_v);
        return {estimate_point(config, design_v, thresholds, 0)};
    }

    if (config.velocity_grid.empty()) {
        throw std::invalid_argument("sweep_velocity: velocity grid must not be empty");
    }
    const Thresholds thresholds =
        compute_thresholds(config.targets, config.timing, mu, mu, config.velocity_grid.front());

    std::vector<SweepPoint> points;
    points.reserve(config.velocity_grid.size());
    for (std::size_t i = 0; i < config.velocity_grid.size(); ++i) {
        points.push_back(estimate_point(config, config.velocity_grid[i], thresholds, i));
    }
    std::stable_sort(points.begin(), points.end(),
                     [](const SweepPoint& a, const SweepPoint& b) {
                         return a.velocity < b.velocity;
                     });
    return points;
}

/// Sup-norm distance between the empirical CDF of sorted samples and a
/// reference CDF.
template <class Cdf>
double ks_statistic(std::span<const double> sorted_samples, Cdf&& cdf) {
    if (sorted_samples.empty()) {
        throw std::invalid_argument("ks_statistic: need at least one sample");
    }
    const double n = static_cast<double>(sorted_samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
        const double f = cdf(sorted_samples[i]);
        d = std::max(d, f - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
    }
    return d;
}

}  // namespace vho
