#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "govsim/params.hpp"
#include "govsim/replicator.hpp"

namespace govsim {

struct CycleReport {
  bool detected = false;
  double period = 0.0;                  // mean spacing of y maxima in the tail
  std::array<double, 3> amplitude{};    // half of (max - min) of x, y, z over the tail
  std::size_t cycles = 0;               // complete y cycles found in the tail
};

inline constexpr double kCycleMinAmplitude = 1e-3;
inline constexpr double kCycleAmplitudeAgreement = 0.05;
inline constexpr std::size_t kCycleMinExtrema = 10;
inline constexpr std::size_t kCycleMinPeriods = 3;

namespace detail {

inline std::vector<std::size_t> local_maxima(const std::vector<double>& v) {
  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] >= v[i + 1]) peaks.push_back(i);
  }
  return peaks;
}

inline std::size_t count_extrema(const std::vector<double>& v) {
  std::size_t n = 0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if ((v[i] > v[i - 1] && v[i] >= v[i + 1]) || (v[i] < v[i - 1] && v[i] <= v[i + 1])) ++n;
  }
  return n;
}

// Peak-to-trough range of each span between consecutive maxima; the series
// must hold at least kCycleMinPeriods spans, each wider than twice the minimum
// amplitude, with successive ranges within the agreement tolerance.
inline bool sustained(const std::vector<double>& v) {
  const auto peaks = local_maxima(v);
  if (peaks.size() < kCycleMinPeriods + 1) return false;
  std::vector<double> ranges;
  for (std::size_t k = 0; k + 1 < peaks.size(); ++k) {
    const auto [lo, hi] = std::minmax_element(v.begin() + static_cast<std::ptrdiff_t>(peaks[k]),
                                              v.begin() + static_cast<std::ptrdiff_t>(peaks[k + 1]) + 1);
    ranges.push_back(*hi - *lo);
  }
  for (std::size_t k = 0; k < ranges.size(); ++k) {
    if (!(ranges[k] > 2.0 * kCycleMinAmplitude)) return false;
    if (k > 0 && std::abs(ranges[k] - ranges[k - 1]) > kCycleAmplitudeAgreement * ranges[k - 1]) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

// Looks for a sustained oscillation of y and z in the last `tail_fraction` of
// the trajectory. Fewer than ten y extrema in the tail means no cycle.
inline CycleReport detect_limit_cycle(const Trajectory& trajectory, double tail_fraction = 0.5) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw PreconditionError("tail fraction must lie in (0, 1]");
  }
  const std::size_t n = trajectory.samples.size();
  const auto first = static_cast<std::size_t>(std::floor((1.0 - tail_fraction) * static_cast<double>(n)));
  if (n < 3 || n - first < 3) {
    throw PreconditionError("trajectory too short for limit-cycle detection");
  }

  std::array<std::vector<double>, 3> series;
  std::vector<double> times;
  for (std::size_t i = first; i < n; ++i) {
    const auto& s = trajectory.samples[i];
    series[0].push_back(s.state.x);
    series[1].push_back(s.state.y);
    series[2].push_back(s.state.z);
    times.push_back(s.t);
  }

  CycleReport report;
  for (int c = 0; c < 3; ++c) {
    const auto [lo, hi] = std::minmax_element(series[c].begin(), series[c].end());
    report.amplitude[c] = 0.5 * (*hi - *lo);
  }

  const auto peaks = detail::local_maxima(series[1]);
  if (peaks.size() >= 2) {
    report.cycles = peaks.size() - 1;
    report.period = (times[peaks.back()] - times[peaks.front()]) / static_cast<double>(report.cycles);
  }

  if (detail::count_extrema(series[1]) < kCycleMinExtrema) return report;
  report.detected = report.amplitude[1] > kCycleMinAmplitude &&
                    report.amplitude[2] > kCycleMinAmplitude &&
                    report.cycles >= kCycleMinPeriods && detail::sustained(series[1]) &&
                    detail::sustained(series[2]);
  return report;
}

}  // namespace govsim
