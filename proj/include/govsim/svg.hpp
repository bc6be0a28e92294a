#pragma once

// Minimal static SVG 1.1 charts: line charts for trajectories and sweeps,
// grouped bars for stationary distributions.

#include <algorithm>
#include <array>
#include <cmath>
#include <charconv>
#include <filesystem>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "govsim/csv.hpp"
#include "govsim/params.hpp"

namespace govsim::svg {

struct Series {
  std::string name;
  std::vector<double> xs;
  std::vector<double> ys;
};

struct LineChart {
  std::string title;
  std::string subtitle;  // typically the parameter set
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::optional<std::pair<double, double>> y_range;  // fixed axis range, else from data
};

struct BarGroup {
  std::string name;
  std::vector<double> values;  // one per category
};

struct BarChart {
  std::string title;
  std::string subtitle;
  std::string y_label;
  std::vector<std::string> categories;
  std::vector<BarGroup> groups;
  std::optional<std::pair<double, double>> y_range;
};

namespace detail {

inline constexpr double kWidth = 820, kHeight = 520;
inline constexpr double kLeft = 70, kRight = 150, kTop = 70, kBottom = 60;
inline constexpr std::size_t kMaxPoints = 4000;
inline constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                     "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

inline std::string tick_label(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 4);
  return std::string(buf, res.ptr);
}

inline std::pair<double, double> padded(double lo, double hi) {
  if (hi > lo) return {lo, hi};
  const double pad = std::max(0.5, std::abs(lo) * 0.1);
  return {lo - pad, hi + pad};
}

struct Frame {
  double x_lo, x_hi, y_lo, y_hi;
  double plot_w() const { return kWidth - kLeft - kRight; }
  double plot_h() const { return kHeight - kTop - kBottom; }
  double px(double x) const { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w(); }
  double py(double y) const { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h(); }
};

inline std::string header(const std::string& title, const std::string& subtitle) {
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(kWidth) +
       "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + ' ' + num(kHeight) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(kWidth / 2) + "\" y=\"28\" font-family=\"sans-serif\" font-size=\"18\" "
       "text-anchor=\"middle\">" + escape(title) + "</text>\n";
  s += "<text x=\"" + num(kWidth / 2) + "\" y=\"50\" font-family=\"sans-serif\" font-size=\"11\" "
       "fill=\"#555\" text-anchor=\"middle\">" + escape(subtitle) + "</text>\n";
  return s;
}

inline std::string y_axis(const Frame& f, const std::string& label) {
  std::string s;
  s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) + "\" y2=\"" +
       num(kTop + f.plot_h()) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = f.y_lo + (f.y_hi - f.y_lo) * i / 5.0;
    const double y = f.py(v);
    s += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) + "\" y2=\"" +
         num(y) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(y + 4) + "\" font-family=\"sans-serif\" "
         "font-size=\"11\" text-anchor=\"end\">" + tick_label(v) + "</text>\n";
  }
  s += "<text x=\"18\" y=\"" + num(kTop + f.plot_h() / 2) + "\" font-family=\"sans-serif\" "
       "font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       num(kTop + f.plot_h() / 2) + ")\">" + escape(label) + "</text>\n";
  return s;
}

inline std::string legend_entry(std::size_t i, const std::string& name) {
  const double x = kWidth - kRight + 20, y = kTop + 10 + 20.0 * static_cast<double>(i);
  const char* color = kPalette[i % kPalette.size()];
  return "<rect x=\"" + num(x) + "\" y=\"" + num(y - 9) + "\" width=\"14\" height=\"10\" fill=\"" +
         color + "\"/>\n<text x=\"" + num(x + 20) + "\" y=\"" + num(y) +
         "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(name) + "</text>\n";
}

}  // namespace detail

inline std::string render(const LineChart& chart) {
  if (chart.series.empty()) throw PreconditionError("line chart needs at least one series");
  double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
  for (const auto& s : chart.series) {
    if (s.xs.empty() || s.xs.size() != s.ys.size()) {
      throw PreconditionError("series '" + s.name + "' is empty or has mismatched lengths");
    }
    for (double x : s.xs) x_lo = std::min(x_lo, x), x_hi = std::max(x_hi, x);
    for (double y : s.ys) y_lo = std::min(y_lo, y), y_hi = std::max(y_hi, y);
  }
  if (chart.y_range) std::tie(y_lo, y_hi) = *chart.y_range;
  std::tie(x_lo, x_hi) = detail::padded(x_lo, x_hi);
  std::tie(y_lo, y_hi) = detail::padded(y_lo, y_hi);
  const detail::Frame f{x_lo, x_hi, y_lo, y_hi};

  std::string s = detail::header(chart.title, chart.subtitle);
  s += "<line x1=\"" + detail::num(detail::kLeft) + "\" y1=\"" + detail::num(f.py(y_lo)) + "\" x2=\"" +
       detail::num(detail::kLeft + f.plot_w()) + "\" y2=\"" + detail::num(f.py(y_lo)) +
       "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = x_lo + (x_hi - x_lo) * i / 5.0;
    const double x = f.px(v);
    s += "<text x=\"" + detail::num(x) + "\" y=\"" + detail::num(f.py(y_lo) + 18) +
         "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
         detail::tick_label(v) + "</text>\n";
  }
  s += "<text x=\"" + detail::num(detail::kLeft + f.plot_w() / 2) + "\" y=\"" +
       detail::num(detail::kHeight - 15) + "\" font-family=\"sans-serif\" font-size=\"13\" "
       "text-anchor=\"middle\">" + detail::escape(chart.x_label) + "</text>\n";
  s += detail::y_axis(f, chart.y_label);

  for (std::size_t k = 0; k < chart.series.size(); ++k) {
    const auto& series = chart.series[k];
    const std::size_t n = series.xs.size();
    const std::size_t stride = std::max<std::size_t>(1, n / detail::kMaxPoints);
    s += "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" +
         std::string(detail::kPalette[k % detail::kPalette.size()]) + "\" points=\"";
    auto point = [&](std::size_t i) {
      s += detail::num(f.px(series.xs[i])) + ',' + detail::num(f.py(series.ys[i])) + ' ';
    };
    for (std::size_t i = 0; i < n; i += stride) point(i);
    if ((n - 1) % stride != 0) point(n - 1);
    s.back() = '"';
    s += "/>\n";
    s += detail::legend_entry(k, series.name);
  }
  s += "</svg>\n";
  return s;
}

inline std::string render(const BarChart& chart) {
  if (chart.categories.empty() || chart.groups.empty()) {
    throw PreconditionError("bar chart needs categories and at least one group");
  }
  double y_lo = 0.0, y_hi = 0.0;
  for (const auto& g : chart.groups) {
    if (g.values.size() != chart.categories.size()) {
      throw PreconditionError("bar group '" + g.name + "' does not match the category count");
    }
    for (double v : g.values) y_lo = std::min(y_lo, v), y_hi = std::max(y_hi, v);
  }
  if (chart.y_range) std::tie(y_lo, y_hi) = *chart.y_range;
  std::tie(y_lo, y_hi) = detail::padded(y_lo, y_hi);
  const detail::Frame f{0.0, static_cast<double>(chart.categories.size()), y_lo, y_hi};

  std::string s = detail::header(chart.title, chart.subtitle);
  s += detail::y_axis(f, chart.y_label);
  const double base = f.py(std::clamp(0.0, y_lo, y_hi));
  s += "<line x1=\"" + detail::num(detail::kLeft) + "\" y1=\"" + detail::num(base) + "\" x2=\"" +
       detail::num(detail::kLeft + f.plot_w()) + "\" y2=\"" + detail::num(base) + "\" stroke=\"black\"/>\n";

  const double slot = f.plot_w() / static_cast<double>(chart.categories.size());
  const double bar_w = 0.8 * slot / static_cast<double>(chart.groups.size());
  for (std::size_t c = 0; c < chart.categories.size(); ++c) {
    const double slot_x = detail::kLeft + slot * static_cast<double>(c);
    for (std::size_t g = 0; g < chart.groups.size(); ++g) {
      const double v = chart.groups[g].values[c];
      const double top = f.py(v);
      const double x = slot_x + 0.1 * slot + bar_w * static_cast<double>(g);
      s += "<rect x=\"" + detail::num(x) + "\" y=\"" + detail::num(std::min(top, base)) +
           "\" width=\"" + detail::num(bar_w) + "\" height=\"" + detail::num(std::abs(base - top)) +
           "\" fill=\"" + detail::kPalette[g % detail::kPalette.size()] + "\"><title>" +
           detail::escape(chart.categories[c] + ' ' + chart.groups[g].name + ": " + format_double(v)) +
           "</title></rect>\n";
    }
    s += "<text x=\"" + detail::num(slot_x + slot / 2) + "\" y=\"" + detail::num(f.py(y_lo) + 18) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
         detail::escape(chart.categories[c]) + "</text>\n";
  }
  for (std::size_t g = 0; g < chart.groups.size(); ++g) {
    s += detail::legend_entry(g, chart.groups[g].name);
  }
  s += "</svg>\n";
  return s;
}

template <class Chart>
void emit_svg(const Chart& chart, const std::filesystem::path& path) {
  write_text_file(path, render(chart));
}

}  // namespace govsim::svg
