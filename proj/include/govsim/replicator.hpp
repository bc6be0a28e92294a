#pragma once

// Three-population replicator dynamics
//
//   x' = x(1-x) dU(y,z),  y' = y(1-y) dC(x,z),  z' = z(1-z) dR(x,y)
//
// where dU, dC, dR are the cooperator-minus-defector fitness differences of
// the selected model variant. Integration is classical fixed-step RK4.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "govsim/params.hpp"
#include "govsim/payoffs.hpp"

namespace govsim {

inline Eigen::Vector3d to_vector(const MixtureState& s) { return {s.x, s.y, s.z}; }
inline MixtureState to_state(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }

namespace detail {

inline Eigen::Vector3d rhs_unchecked(ModelVariant variant, const ModelParams& p,
                                     const MixtureState& s) {
  const auto d = fitness_differences(variant, p, s);
  return {s.x * (1.0 - s.x) * d[0], s.y * (1.0 - s.y) * d[1], s.z * (1.0 - s.z) * d[2]};
}

}  // namespace detail

inline Eigen::Vector3d rhs(ModelVariant variant, const ModelParams& params,
                           const MixtureState& state) {
  validate(params);
  validate(state);
  return detail::rhs_unchecked(variant, params, state);
}

// Analytic Jacobian. Each difference dI does not depend on its own population's
// frequency, so dF_i/ds_i = (1-2 s_i) dI and dF_i/ds_j = s_i(1-s_i) d(dI)/ds_j.
inline Eigen::Matrix3d jacobian(ModelVariant variant, const ModelParams& p,
                                const MixtureState& s) {
  validate(p);
  validate(s);
  const auto d = detail::fitness_differences(variant, p, s);
  const double x = s.x, y = s.y, z = s.z;
  const double bU = p.user_benefit, eps = p.risk_factor, u = p.punishment_impact;
  const double net_reward = p.capture_reward - p.punishment_cost;

  // Partials of the differences: row = population, column = variable.
  Eigen::Matrix3d grad = Eigen::Matrix3d::Zero();
  grad(1, 0) = u * z;
  grad(1, 2) = u * x;
  switch (variant) {
    case ModelVariant::Baseline:
      grad(0, 1) = bU * (1.0 - eps);
      grad(2, 0) = -(1.0 - y) * p.punishment_cost;
      grad(2, 1) = x * p.punishment_cost;
      break;
    case ModelVariant::RegulatorReward:
      grad(0, 1) = bU * (1.0 - eps);
      grad(2, 0) = (1.0 - y) * net_reward;
      grad(2, 1) = -x * net_reward;
      break;
    case ModelVariant::ConditionalTrust:
      grad(0, 1) = bU * z * (1.0 - eps);
      grad(0, 2) = bU * (y + eps * (1.0 - y));
      grad(2, 0) = p.regulator_funding + net_reward * (1.0 - y);
      grad(2, 1) = -x * net_reward;
      break;
  }

  const double c[3] = {x, y, z};
  Eigen::Matrix3d jac;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      jac(i, j) = (i == j) ? (1.0 - 2.0 * c[i]) * d[i] : c[i] * (1.0 - c[i]) * grad(i, j);
    }
  }
  return jac;
}

struct TrajectorySample {
  double t = 0.0;
  MixtureState state;
};

struct Trajectory {
  ModelVariant variant = ModelVariant::Baseline;
  ModelParams params;
  MixtureState initial;
  double dt = 0.01;
  std::size_t thin = 1;
  std::vector<TrajectorySample> samples;
  // Largest excursion outside [0,1] seen before clipping.
  double max_overshoot = 0.0;

  const MixtureState& final_state() const { return samples.back().state; }
  double t_end() const { return samples.back().t; }
};

inline constexpr double kDefaultStep = 0.01;
inline constexpr double kDefaultHorizon = 2000.0;
inline constexpr double kMaxStep = 0.1;
inline constexpr double kOvershootLimit = 1e-9;

struct ReplicatorSettings {
  MixtureState initial{0.5, 0.5, 0.5};
  double t_end = kDefaultHorizon;
  double dt = kDefaultStep;
  std::size_t thin = 1;

  friend bool operator==(const ReplicatorSettings&, const ReplicatorSettings&) = default;
};

// Classical fixed-step RK4; a sample is kept every `thin` steps and at t_end.
inline Trajectory integrate(ModelVariant variant, const ModelParams& params,
                            const MixtureState& initial, double t_end = kDefaultHorizon,
                            double dt = kDefaultStep, std::size_t thin = 1) {
  validate(params);
  validate(initial);
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw PreconditionError("t_end must be positive and finite");
  }
  if (!(dt > 0.0 && dt <= kMaxStep)) {
    throw PreconditionError("dt must satisfy 0 < dt <= 0.1");
  }
  if (thin == 0) throw PreconditionError("thin must be at least 1");

  Trajectory traj;
  traj.variant = variant;
  traj.params = params;
  traj.initial = initial;
  traj.dt = dt;
  traj.thin = thin;

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  traj.samples.reserve(steps / thin + 2);
  traj.samples.push_back({0.0, initial});

  auto f = [&](const Eigen::Vector3d& v) {
    return detail::rhs_unchecked(variant, params, to_state(v));
  };

  Eigen::Vector3d s = to_vector(initial);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_prev = static_cast<double>(k - 1) * dt;
    const double h = k == steps ? t_end - t_prev : dt;
    const Eigen::Vector3d k1 = f(s);
    const Eigen::Vector3d k2 = f(s + 0.5 * h * k1);
    const Eigen::Vector3d k3 = f(s + 0.5 * h * k2);
    const Eigen::Vector3d k4 = f(s + h * k3);
    s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    for (int i = 0; i < 3; ++i) {
      if (!std::isfinite(s[i])) {
        throw NumericalError("non-finite state at t=" + std::to_string(t_prev + h));
      }
      const double overshoot = std::max(-s[i], s[i] - 1.0);
      if (overshoot > 0.0) {
        traj.max_overshoot = std::max(traj.max_overshoot, overshoot);
        if (overshoot > kOvershootLimit) {
          throw NumericalError("state left [0,1] by " + std::to_string(overshoot) +
                               " at t=" + std::to_string(t_prev + h) + "; step too large");
        }
        s[i] = std::clamp(s[i], 0.0, 1.0);
      }
    }

    if (k % thin == 0 || k == steps) {
      const double t = k == steps ? t_end : static_cast<double>(k) * dt;
      traj.samples.push_back({t, to_state(s)});
    }
  }
  return traj;
}

inline Trajectory integrate(ModelVariant variant, const ModelParams& params,
                            const ReplicatorSettings& settings) {
  return integrate(variant, params, settings.initial, settings.t_end, settings.dt, settings.thin);
}

}  // namespace govsim
