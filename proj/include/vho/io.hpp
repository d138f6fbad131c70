#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

#include "vho/analytic.hpp"
#include "vho/baselines.hpp"
#include "vho/coverage.hpp"
#include "vho/geometry.hpp"
#include "vho/montecarlo.hpp"

namespace vho {

inline constexpr int kCsvSignificantDigits = 12;

/// Locale-free decimal rendering with a fixed number of significant digits,
/// trailing zeros trimmed.
inline std::string format_number(double x, int digits = kCsvSignificantDigits) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, digits);
    if (res.ec != std::errc{}) {
        throw std::runtime_error("format_number: conversion failed");
    }
    return std::string(buf, res.ptr);
}

namespace detail {

inline void append_cell(std::string& line, double value) {
    line += format_number(value);
}

inline void append_cell(std::string& line, std::uint64_t value) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    line.append(buf, res.ptr);
}

inline void append_cell(std::string& line, std::string_view value) {
    line += value;
}

inline void append_cell(std::string& line, const std::optional<double>& value) {
    if (value) {
        line += format_number(*value);
    }
}

}  // namespace detail

/// One comma-separated line, newline-terminated.
template <class... Ts>
void csv_row(std::ostream& out, const Ts&... cells) {
    std::string line;
    std::size_t index = 0;
    (((index++ != 0 ? line += ',' : line), detail::append_cell(line, cells)), ...);
    line += '\n';
    out << line;
}

inline void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points) {
    out << "velocity_mps,n_threshold_s,m_threshold_s,pu_analytic,pu_empirical,se_pu,"
           "pf_analytic,pf_empirical,se_pf\n";
    for (const SweepPoint& p : points) {
        csv_row(out, p.velocity, p.n_threshold, p.m_threshold, p.p_u_analytic, p.p_u_empirical,
                p.se_pu, p.p_f_analytic, p.p_f_empirical, p.se_pf);
    }
}

inline void write_compare_csv(std::ostream& out, std::span<const CompareRow> rows) {
    out << "velocity_mps,model,threshold_s,pu_empirical,se_pu\n";
    for (const CompareRow& r : rows) {
        csv_row(out, r.velocity, to_string(r.model), r.threshold, r.p_u_empirical, r.se_pu);
    }
}

inline void write_pdf_csv(std::ostream& out, std::span<const PdfSample> samples) {
    out << "t_s,pdf,cdf\n";
    for (const PdfSample& s : samples) {
        csv_row(out, s.t_s, s.pdf, s.cdf);
    }
}

inline void write_boundary_csv(std::ostream& out, std::span<const BoundaryPoint> boundary) {
    out << "angle_rad,radius_m\n";
    for (const BoundaryPoint& b : boundary) {
        csv_row(out, b.angle_rad, b.radius_m);
    }
}

inline void write_trace_csv(std::ostream& out, std::span<const RssSample> trace) {
    out << "angle_rad,rss_dbm\n";
    for (const RssSample& t : trace) {
        csv_row(out, t.angle_rad, t.rss_dbm);
    }
}

inline void write_contours_csv(std::ostream& out, std::span<const ContourPoint> contours) {
    out << "p,contour_radius_m\n";
    for (const ContourPoint& c : contours) {
        csv_row(out, c.p, c.radius_m);
    }
}

}  // namespace vho
