#pragma once

// Fixed points of the replicator dynamics and their linear stability.
//
// Enumeration walks every face of the unit cube. A coordinate is either pinned
// to 0 or 1, or free; free coordinates must zero their own fitness difference.
// Each difference is independent of its own population's frequency and affine
// in each other frequency, so every face reduces to closed-form affine solves:
//
//   one free coordinate     -> never isolated (whole edge or nothing)
//   two free coordinates    -> two independent affine equations
//   three free coordinates  -> y* = eps/(eps-1), then x from dR, then z from dC
//
// Non-isolated equilibrium sets (e.g. the z = 0 edges under conditional trust,
// or eps = 0) are not reported.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string_view>
#include <tuple>
#include <vector>

#include "govsim/params.hpp"
#include "govsim/payoffs.hpp"
#include "govsim/replicator.hpp"

namespace govsim {

enum class Stability { Stable, Unstable, NonHyperbolic };

inline std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::NonHyperbolic: return "non_hyperbolic";
  }
  return "unknown";
}

enum class EquilibriumKind { Vertex, Face, Interior };

inline std::string_view to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::Vertex: return "vertex";
    case EquilibriumKind::Face: return "face";
    case EquilibriumKind::Interior: return "interior";
  }
  return "unknown";
}

using Eigenvalues = std::array<std::complex<double>, 3>;

inline constexpr double kStabilityMargin = 1e-9;
inline constexpr double kEquilibriumResidual = 1e-12;
inline constexpr double kInteriorMargin = 1e-9;

// Sorted by real part, then imaginary part.
inline Eigenvalues eigenvalues(const Eigen::Matrix3d& m) {
  Eigen::EigenSolver<Eigen::Matrix3d> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalue computation did not converge");
  }
  Eigenvalues ev;
  for (int i = 0; i < 3; ++i) ev[i] = solver.eigenvalues()[i];
  std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return ev;
}

inline Stability classify_stability(const Eigenvalues& ev) {
  bool all_negative = true;
  for (const auto& l : ev) {
    if (l.real() > kStabilityMargin) return Stability::Unstable;
    if (!(l.real() < -kStabilityMargin)) all_negative = false;
  }
  return all_negative ? Stability::Stable : Stability::NonHyperbolic;
}

struct EquilibriumReport {
  MixtureState point;
  EquilibriumKind kind = EquilibriumKind::Vertex;
  Eigenvalues eigenvalues{};
  Stability verdict = Stability::NonHyperbolic;
};

inline EquilibriumReport analyze_equilibrium(ModelVariant variant, const ModelParams& params,
                                             const MixtureState& point, EquilibriumKind kind) {
  EquilibriumReport r;
  r.point = point;
  r.kind = kind;
  r.eigenvalues = eigenvalues(jacobian(variant, params, point));
  r.verdict = classify_stability(r.eigenvalues);
  return r;
}

namespace detail {

// Root of an affine function of one variable, sampled at 0 and 1.
inline std::optional<double> affine_root(const std::function<double(double)>& f) {
  const double f0 = f(0.0);
  const double slope = f(1.0) - f0;
  const double scale = std::max({std::abs(f0), std::abs(slope), 1.0});
  if (std::abs(slope) <= 1e-14 * scale) return std::nullopt;
  return -f0 / slope;
}

inline bool strictly_inside(double t) {
  return t > kInteriorMargin && t < 1.0 - kInteriorMargin;
}

inline double residual(ModelVariant variant, const ModelParams& p, const MixtureState& s) {
  return rhs_unchecked(variant, p, s).cwiseAbs().maxCoeff();
}

}  // namespace detail

// Vertices first (x, y, z bits ascending), then face points, then interior points.
inline std::vector<EquilibriumReport> enumerate_equilibria(ModelVariant variant,
                                                           const ModelParams& params) {
  validate(params);
  std::vector<EquilibriumReport> out;

  for (int bits = 0; bits < 8; ++bits) {
    const MixtureState v{double((bits >> 2) & 1), double((bits >> 1) & 1), double(bits & 1)};
    out.push_back(analyze_equilibrium(variant, params, v, EquilibriumKind::Vertex));
  }

  auto diff = [&](int role, const std::array<double, 3>& c) {
    return detail::fitness_differences(variant, params, {c[0], c[1], c[2]})[role];
  };
  auto accept = [&](const std::array<double, 3>& c, EquilibriumKind kind) {
    const MixtureState s{c[0], c[1], c[2]};
    const double res = detail::residual(variant, params, s);
    if (res > kEquilibriumResidual) {
      throw NumericalError("equilibrium candidate residual " + std::to_string(res) +
                           " exceeds tolerance");
    }
    out.push_back(analyze_equilibrium(variant, params, s, kind));
  };

  // Two free coordinates i, j on the face where coordinate k is pinned.
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    for (double pinned : {0.0, 1.0}) {
      std::array<double, 3> c{};
      c[k] = pinned;
      // dI depends on j (and k), not on i; dJ depends on i (and k), not on j.
      auto solve_j = detail::affine_root([&](double t) {
        auto cc = c;
        cc[j] = t;
        return diff(i, cc);
      });
      auto solve_i = detail::affine_root([&](double t) {
        auto cc = c;
        cc[i] = t;
        return diff(j, cc);
      });
      if (!solve_i || !solve_j) continue;
      if (!detail::strictly_inside(*solve_i) || !detail::strictly_inside(*solve_j)) continue;
      c[i] = *solve_i;
      c[j] = *solve_j;
      accept(c, EquilibriumKind::Face);
    }
  }
  // Face points were produced face by face; list them in coordinate order.
  std::stable_sort(out.begin() + 8, out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.point.x, a.point.y, a.point.z) < std::tie(b.point.x, b.point.y, b.point.z);
  });

  // Interior: the user difference vanishes off z = 0 only at y* = eps/(eps-1),
  // which lies in (0,1) iff eps < 0.
  const double eps = params.risk_factor;
  const double y_star = eps / (eps - 1.0);
  if (detail::strictly_inside(y_star)) {
    auto x_star = detail::affine_root([&](double t) { return diff(2, {t, y_star, 0.5}); });
    if (x_star && detail::strictly_inside(*x_star)) {
      auto z_star = detail::affine_root([&](double t) { return diff(1, {*x_star, y_star, t}); });
      if (z_star && detail::strictly_inside(*z_star)) {
        accept({*x_star, y_star, *z_star}, EquilibriumKind::Interior);
      }
    }
  }
  return out;
}

}  // namespace govsim
