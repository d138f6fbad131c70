// Command-line experiment runner: velocity sweeps, threshold queries,
// dwell-time tables, baseline comparisons, and coverage contours.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "vho/vho.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct CommonOptions {
    double mu_r = 100.0;
    double sigma_r = 10.0;
    double tau_a = 1.0;
    double tau_d = 1.0;
    double target_pu = 0.02;
    double target_pf = 0.01;
    std::vector<double> v_grid;
    double v_min = 0.0;
    double v_max = 0.0;
    std::uint64_t iterations = 1'000'000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out;
    std::string radius_mode = "resampled";
    std::string velocity_mode = "grid";
    bool plot = false;
    std::string config_path;
};

struct PointOptions {
    double r1 = 0.0;
    double r2 = 0.0;
    double v = 0.0;
    std::size_t points = 512;
};

struct CoverageOptions {
    double tx_power = 20.0;
    double sensitivity = -90.0;
    double pl_d0 = 40.0;
    double beta = 3.5;
    double sigma_sh = 6.0;
    double d0 = 1.0;
    std::vector<double> contours = {0.5, 0.8, 0.9};
    double trace_p = 0.8;
    std::size_t trace_points = 1000;
    std::size_t boundary_points = 256;
    std::size_t smoothing = 9;
};

// Routes artifacts to the run directory when one was requested, otherwise
// prints primary artifacts on standard output. Collects names for the
// manifest.
class ArtifactSink {
  public:
    explicit ArtifactSink(const std::string& out_dir) {
        if (!out_dir.empty()) {
            dir_ = fs::path(out_dir);
            fs::create_directories(*dir_);
        }
    }

    bool to_files() const { return dir_.has_value(); }

    void emit(const std::string& name, const std::string& content, bool primary = true) {
        if (dir_) {
            const fs::path path = *dir_ / name;
            std::ofstream file(path, std::ios::binary);
            if (!file) {
                throw std::runtime_error("cannot open " + path.string());
            }
            file << content;
            artifacts_.push_back(name);
        } else if (primary) {
            std::cout << content;
        }
    }

    void finalize(const std::string& command, ordered_json parameters, std::uint64_t seed,
                  Clock::time_point start) {
        if (!dir_) {
            return;
        }
        vho::RunManifest manifest;
        manifest.command = command;
        manifest.parameters = std::move(parameters);
        manifest.seed = seed;
        manifest.artifacts = artifacts_;
        manifest.duration_seconds =
            std::chrono::duration<double>(Clock::now() - start).count();
        vho::write_manifest(*dir_ / "manifest.json", manifest);
    }

  private:
    std::optional<fs::path> dir_;
    std::vector<std::string> artifacts_;
};

vho::SimConfig make_sim_config(const CommonOptions& o) {
    vho::SimConfig config{
        .radius_model = vho::CellRadiusModel(o.mu_r, o.sigma_r),
        .timing = vho::HandoverTiming(o.tau_a, o.tau_d),
        .targets = vho::ProbabilityTargets(o.target_pu, o.target_pf),
        .velocity_grid = o.v_grid,
        .v_min = o.v_min,
        .v_max = o.v_max,
        .iterations = o.iterations,
        .seed = o.seed,
        .radius_mode = o.radius_mode == "fixed" ? vho::RadiusMode::fixed
                                                : vho::RadiusMode::resampled,
        .velocity_mode = o.velocity_mode == "sampled" ? vho::VelocityMode::sampled
                                                      : vho::VelocityMode::grid,
        .threads = o.threads,
    };
    vho::validate(config);
    return config;
}

ordered_json common_params(const CommonOptions& o) {
    ordered_json j;
    j["mu-r"] = o.mu_r;
    j["sigma-r"] = o.sigma_r;
    j["tau-a"] = o.tau_a;
    j["tau-d"] = o.tau_d;
    j["target-pu"] = o.target_pu;
    j["target-pf"] = o.target_pf;
    j["v-grid"] = o.v_grid;
    j["vmin"] = o.v_min;
    j["vmax"] = o.v_max;
    j["iterations"] = o.iterations;
    j["seed"] = o.seed;
    j["threads"] = o.threads;
    j["radius-mode"] = o.radius_mode;
    j["velocity-mode"] = o.velocity_mode;
    j["out"] = o.out;
    j["plot"] = o.plot;
    return j;
}

std::string sweep_plot(const std::vector<vho::SweepPoint>& points, bool unnecessary,
                       double target) {
    vho::LinePlot plot(unnecessary ? "Unnecessary handover probability vs velocity"
                                   : "Handover failure probability vs velocity",
                       "velocity (m/s)", "probability");
    std::vector<std::pair<double, double>> empirical, analytic;
    for (const vho::SweepPoint& p : points) {
        empirical.emplace_back(p.velocity, unnecessary ? p.p_u_empirical : p.p_f_empirical);
        analytic.emplace_back(p.velocity, unnecessary ? p.p_u_analytic : p.p_f_analytic);
    }
    plot.add_series("empirical", empirical);
    plot.add_series("analytic", analytic);
    plot.add_series("design target",
                    {{points.front().velocity, target}, {points.back().velocity, target}});
    return plot.render();
}

std::string compare_plot(const std::vector<vho::CompareRow>& rows, double target) {
    vho::LinePlot plot("Empirical unnecessary-handover probability by model", "velocity (m/s)",
                       "probability");
    for (const vho::CompareModel model :
         {vho::CompareModel::proposed, vho::CompareModel::yan, vho::CompareModel::hussain}) {
        std::vector<std::pair<double, double>> series;
        for (const vho::CompareRow& r : rows) {
            if (r.model == model && r.p_u_empirical) {
                series.emplace_back(r.velocity, *r.p_u_empirical);
            }
        }
        if (!series.empty()) {
            plot.add_series(std::string(vho::to_string(model)), series);
        }
    }
    if (!rows.empty()) {
        plot.add_series("design target",
                        {{rows.front().velocity, target}, {rows.back().velocity, target}});
    }
    return plot.render();
}

std::string pdf_plot(const std::vector<vho::PdfSample>& table) {
    vho::LinePlot plot("Dwell-time distribution", "t (s)", "density / probability");
    std::vector<std::pair<double, double>> pdf, cdf;
    for (const vho::PdfSample& s : table) {
        pdf.emplace_back(s.t_s, s.pdf);
        cdf.emplace_back(s.t_s, s.cdf);
    }
    plot.add_series("pdf", pdf);
    plot.add_series("cdf", cdf);
    return plot.render();
}

int run_sweep(const CommonOptions& o) {
    const auto start = Clock::now();
    const vho::SimConfig config = make_sim_config(o);
    const std::vector<vho::SweepPoint> points = vho::sweep_velocity(config);

    std::ostringstream csv;
    vho::write_sweep_csv(csv, points);

    ArtifactSink sink(o.out);
    sink.emit("sweep.csv", csv.str());
    if (o.plot && !points.empty()) {
        sink.emit("sweep_pu.svg", sweep_plot(points, true, o.target_pu), false);
        sink.emit("sweep_pf.svg", sweep_plot(points, false, o.target_pf), false);
    }
    sink.finalize("sweep", common_params(o), o.seed, start);
    return 0;
}

int run_threshold(const CommonOptions& o, const PointOptions& p) {
    const auto start = Clock::now();
    const vho::HandoverTiming timing(o.tau_a, o.tau_d);
    const vho::ProbabilityTargets targets(o.target_pu, o.target_pf);
    const vho::Thresholds thresholds =
        vho::compute_thresholds(targets, timing, p.r1, p.r2, p.v);
    std::cout << "N=" << vho::format_number(thresholds.n)
              << " M=" << vho::format_number(thresholds.m) << '\n';

    ordered_json params;
    params["r1"] = p.r1;
    params["r2"] = p.r2;
    params["v"] = p.v;
    params["tau-a"] = o.tau_a;
    params["tau-d"] = o.tau_d;
    params["target-pu"] = o.target_pu;
    params["target-pf"] = o.target_pf;

    ArtifactSink sink(o.out);
    sink.finalize("threshold", std::move(params), o.seed, start);
    return 0;
}

int run_pdf(const CommonOptions& o, const PointOptions& p) {
    const auto start = Clock::now();
    const std::vector<vho::PdfSample> table =
        vho::tabulate_traversal_time(p.r1, p.r2, p.v, p.points);

    std::ostringstream csv;
    vho::write_pdf_csv(csv, table);

    ordered_json params;
    params["r1"] = p.r1;
    params["r2"] = p.r2;
    params["v"] = p.v;
    params["points"] = p.points;

    ArtifactSink sink(o.out);
    sink.emit("pdf.csv", csv.str());
    if (o.plot) {
        sink.emit("pdf.svg", pdf_plot(table), false);
    }
    sink.finalize("pdf", std::move(params), o.seed, start);
    return 0;
}

int run_compare(const CommonOptions& o) {
    const auto start = Clock::now();
    const vho::SimConfig config = make_sim_config(o);
    const std::vector<vho::CompareRow> rows = vho::compare_models(config);

    std::ostringstream csv;
    vho::write_compare_csv(csv, rows);

    ArtifactSink sink(o.out);
    sink.emit("compare.csv", csv.str());
    if (o.plot && !rows.empty()) {
        sink.emit("compare_pu.svg", compare_plot(rows, o.target_pu), false);
    }
    sink.finalize("compare", common_params(o), o.seed, start);
    return 0;
}

int run_coverage(const CommonOptions& o, const CoverageOptions& c) {
    const auto start = Clock::now();
    const vho::PathLossModel model{c.tx_power, c.sensitivity, c.pl_d0,
                                   c.beta,     c.sigma_sh,    c.d0};

    std::vector<vho::ContourPoint> contours;
    contours.reserve(c.contours.size());
    for (const double p : c.contours) {
        contours.push_back({p, vho::contour_radius(model, p)});
    }

    auto trace_rng = vho::make_block_engine(o.seed, 1, 0);
    const std::vector<vho::RssSample> trace =
        vho::rss_trace_along_contour(model, c.trace_p, c.trace_points, trace_rng);

    const vho::CellRadiusModel radius_model(o.mu_r, o.sigma_r);
    auto boundary_rng = vho::make_block_engine(o.seed, 0, 0);
    const std::vector<vho::BoundaryPoint> boundary =
        vho::generate_boundary(radius_model, c.boundary_points, c.smoothing, boundary_rng);

    std::ostringstream contours_csv, trace_csv, boundary_csv;
    vho::write_contours_csv(contours_csv, contours);
    vho::write_trace_csv(trace_csv, trace);
    vho::write_boundary_csv(boundary_csv, boundary);

    ordered_json params;
    params["mu-r"] = o.mu_r;
    params["sigma-r"] = o.sigma_r;
    params["tx-power"] = c.tx_power;
    params["sensitivity"] = c.sensitivity;
    params["pl-d0"] = c.pl_d0;
    params["beta"] = c.beta;
    params["sigma-sh"] = c.sigma_sh;
    params["d0"] = c.d0;
    params["contours"] = c.contours;
    params["trace-p"] = c.trace_p;
    params["trace-points"] = c.trace_points;
    params["boundary-points"] = c.boundary_points;
    params["smoothing"] = c.smoothing;
    params["seed"] = o.seed;

    ArtifactSink sink(o.out);
    sink.emit("contours.csv", contours_csv.str());
    sink.emit("trace.csv", trace_csv.str(), false);
    sink.emit("boundary.csv", boundary_csv.str(), false);
    if (o.plot) {
        sink.emit("coverage.svg",
                  vho::render_cell_plot("Cell boundary and reliability contours", boundary,
                                        contours),
                  false);
    }
    sink.finalize("coverage", std::move(params), o.seed, start);
    return 0;
}

std::string_view trim_ws(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) {
        s.remove_suffix(1);
    }
    return s;
}

// Splices "--key=value" tokens from a flat config file into the argument
// list. Keys use the long flag names; keys already given as flags are
// skipped, so explicit flags keep precedence.
void expand_config_tokens(std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            break;
        }
    }
    if (path.empty()) {
        return;
    }
    std::ifstream file(path);
    if (!file) {
        throw std::invalid_argument("cannot read config file " + path);
    }
    std::string line;
    while (std::getline(file, line)) {
        const std::string_view stripped = trim_ws(line);
        if (stripped.empty() || stripped.front() == '#') {
            continue;
        }
        const std::size_t eq = stripped.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("config line is not key = value: " + line);
        }
        const std::string key(trim_ws(stripped.substr(0, eq)));
        std::string_view value = trim_ws(stripped.substr(eq + 1));
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
            value.back() == value.front()) {
            value = value.substr(1, value.size() - 2);
        }
        if (key.empty() || key == "config") {
            continue;
        }
        const std::string flag = "--" + key;
        const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (!given) {
            args.push_back(flag + "=" + std::string(value));
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dwell-time handover necessity estimation over an irregular WLAN cell"};
    app.set_version_flag("--version", std::string(vho::kVersion));
    app.require_subcommand(1);

    CommonOptions common;
    PointOptions point;
    CoverageOptions cov;

    const auto add_radius_flags = [&](CLI::App* sub) {
        sub->add_option("--mu-r", common.mu_r, "Mean cell radius, meters")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--sigma-r", common.sigma_r, "Cell radius standard deviation, meters")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
    };
    const auto add_timing_flags = [&](CLI::App* sub) {
        sub->add_option("--tau-a", common.tau_a, "Handover entry latency, seconds")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--tau-d", common.tau_d, "Handover exit latency, seconds")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };
    const auto add_target_flags = [&](CLI::App* sub) {
        sub->add_option("--target-pu", common.target_pu,
                        "Unnecessary-handover probability target")
            ->check(CLI::Range(0.0, 1.0))
            ->capture_default_str();
        sub->add_option("--target-pf", common.target_pf, "Handover failure probability target")
            ->check(CLI::Range(0.0, 1.0))
            ->capture_default_str();
    };
    const auto add_sim_flags = [&](CLI::App* sub) {
        sub->add_option("--v-grid", common.v_grid, "Velocity grid, m/s, comma separated")
            ->delimiter(',')
            ->check(CLI::PositiveNumber);
        sub->add_option("--vmin", common.v_min, "Lower velocity bound for sampled mode, m/s")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--vmax", common.v_max, "Upper velocity bound for sampled mode, m/s")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--iterations", common.iterations, "Trials per velocity")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--seed", common.seed, "RNG seed")->capture_default_str();
        sub->add_option("--threads", common.threads,
                        "Worker threads, 0 = available parallelism")
            ->capture_default_str();
        sub->add_option("--radius-mode", common.radius_mode,
                        "Radii per trial: fixed at mu-r, or resampled")
            ->check(CLI::IsMember({"fixed", "resampled"}))
            ->capture_default_str();
        sub->add_option("--velocity-mode", common.velocity_mode,
                        "Velocities: grid points, or sampled from [vmin, vmax]")
            ->check(CLI::IsMember({"grid", "sampled"}))
            ->capture_default_str();
    };
    const auto add_out_flags = [&](CLI::App* sub, bool with_plot) {
        auto* out = sub->add_option(
            "--out", common.out, "Output directory for CSV artifacts and the run manifest");
        if (with_plot) {
            sub->add_flag("--plot", common.plot, "Also render SVG plots")->needs(out);
        }
        sub->add_option("--config", common.config_path,
                        "Flat key = value file using the long flag names; flags win")
            ->check(CLI::ExistingFile);
    };

    CLI::App* sweep =
        app.add_subcommand("sweep", "Monte-Carlo velocity sweep against the design targets");
    add_radius_flags(sweep);
    add_timing_flags(sweep);
    add_target_flags(sweep);
    add_sim_flags(sweep);
    add_out_flags(sweep, true);

    CLI::App* threshold =
        app.add_subcommand("threshold", "Dwell thresholds N and M for one geometry");
    threshold->add_option("--r1", point.r1, "Radius at the entry angle, meters")
        ->required()
        ->check(CLI::PositiveNumber);
    threshold->add_option("--r2", point.r2, "Radius at the exit angle, meters")
        ->required()
        ->check(CLI::PositiveNumber);
    threshold->add_option("--v", point.v, "Velocity, m/s")
        ->required()
        ->check(CLI::PositiveNumber);
    add_timing_flags(threshold);
    add_target_flags(threshold);
    add_out_flags(threshold, false);

    CLI::App* pdf =
        app.add_subcommand("pdf", "Tabulate the dwell-time density over its support");
    pdf->add_option("--r1", point.r1, "Radius at the entry angle, meters")
        ->required()
        ->check(CLI::PositiveNumber);
    pdf->add_option("--r2", point.r2, "Radius at the exit angle, meters")
        ->required()
        ->check(CLI::PositiveNumber);
    pdf->add_option("--v", point.v, "Velocity, m/s")->required()->check(CLI::PositiveNumber);
    pdf->add_option("--points", point.points, "Grid points across the support")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_out_flags(pdf, true);

    CLI::App* compare = app.add_subcommand(
        "compare", "Empirical unnecessary-handover rates of this model and the baselines");
    add_radius_flags(compare);
    add_timing_flags(compare);
    add_target_flags(compare);
    add_sim_flags(compare);
    add_out_flags(compare, true);

    CLI::App* coverage = app.add_subcommand(
        "coverage", "Reliability contours, an RSS contour trace, and a cell boundary");
    add_radius_flags(coverage);
    coverage->add_option("--tx-power", cov.tx_power, "Transmit power, dBm")
        ->capture_default_str();
    coverage->add_option("--sensitivity", cov.sensitivity, "Receiver sensitivity, dBm")
        ->capture_default_str();
    coverage->add_option("--pl-d0", cov.pl_d0, "Path loss at the reference distance, dB")
        ->capture_default_str();
    coverage->add_option("--beta", cov.beta, "Path loss exponent")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    coverage->add_option("--sigma-sh", cov.sigma_sh, "Shadowing standard deviation, dB")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    coverage->add_option("--d0", cov.d0, "Reference distance, meters")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    coverage
        ->add_option("--contours", cov.contours,
                     "Coverage probabilities for contour radii, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    coverage->add_option("--trace-p", cov.trace_p, "Contour probability for the RSS trace")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    coverage->add_option("--trace-points", cov.trace_points, "Samples along the trace")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    coverage
        ->add_option("--boundary-points", cov.boundary_points, "Vertices on the cell boundary")
        ->capture_default_str();
    coverage
        ->add_option("--smoothing", cov.smoothing, "Moving-average window for the boundary")
        ->capture_default_str();
    coverage->add_option("--seed", common.seed, "RNG seed")->capture_default_str();
    add_out_flags(coverage, true);

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        expand_config_tokens(args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(sweep)) {
            return run_sweep(common);
        }
        if (app.got_subcommand(threshold)) {
            return run_threshold(common, point);
        }
        if (app.got_subcommand(pdf)) {
            return run_pdf(common, point);
        }
        if (app.got_subcommand(compare)) {
            return run_compare(common);
        }
        if (app.got_subcommand(coverage)) {
            return run_coverage(common, cov);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
