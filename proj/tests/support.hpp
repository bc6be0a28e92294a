#pragma once

// Independent reference implementations and random generators for the tests.
// Nothing here calls into the library's formulas: payoff rows are transcribed
// by hand, expectations are plain sums, fixation uses the raw birth-death
// rates in long double and stationary vectors come from GTH elimination.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "govsim/params.hpp"

namespace testing_support {

using govsim::ModelParams;
using govsim::ModelVariant;

struct Triple {
  double u, c, r;
};

// Rows by (trust, creator complies, regulator enforces).
inline Triple table_row(ModelVariant m, const ModelParams& p, bool t, bool cc, bool rc) {
  const double bU = p.user_benefit, e = p.risk_factor, bP = p.creator_benefit, cP = p.safety_cost;
  const double bR = p.regulator_funding, cR = p.regulation_cost, u = p.punishment_impact,
               v = p.punishment_cost, bfo = p.capture_reward;
  const bool ct = m == ModelVariant::ConditionalTrust;
  const double extra = m == ModelVariant::Baseline ? 0.0 : bfo;
  if (t) {
    if (cc && rc) return {bU, bP - cP, bR - cR};
    if (cc && !rc) return ct ? Triple{0, -cP, 0} : Triple{bU, bP - cP, bR};
    if (!cc && rc) return {e * bU, bP - u, bR - cR - v + extra};
    return ct ? Triple{0, 0, 0} : Triple{e * bU, bP, bR};
  }
  if (cc && rc) return {0, -cP, -cR};
  if (cc && !rc) return {0, -cP, 0};
  if (!cc && rc) return {0, 0, -cR};
  return {0, 0, 0};
}

// f_C - f_D for role 0 (user), 1 (creator), 2 (regulator) by summing the table.
inline double brute_difference(ModelVariant m, const ModelParams& p, int role, double x, double y, double z) {
  auto w = [](bool c, double f) { return c ? f : 1.0 - f; };
  double coop = 0.0, defect = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int focal = 0; focal < 2; ++focal) {
        bool t = false, cc = false, rc = false;
        double weight = 0.0;
        if (role == 0) {
          t = focal == 0, cc = a == 0, rc = b == 0;
          weight = w(cc, y) * w(rc, z);
        } else if (role == 1) {
          t = a == 0, cc = focal == 0, rc = b == 0;
          weight = w(t, x) * w(rc, z);
        } else {
          t = a == 0, cc = b == 0, rc = focal == 0;
          weight = w(t, x) * w(cc, y);
        }
        const Triple row = table_row(m, p, t, cc, rc);
        const double pay = role == 0 ? row.u : role == 1 ? row.c : row.r;
        (focal == 0 ? coop : defect) += weight * pay;
      }
    }
  }
  return coop - defect;
}

// Fixation probability of one mutant from the birth-death rates
// T+(k) = (Z-k)/Z * k/Z * sigma(beta*gain), T-(k) = (Z-k)/Z * k/Z * sigma(-beta*gain).
inline long double fixation_reference(double gain, double beta, std::size_t z) {
  const long double zz = static_cast<long double>(z);
  long double sum = 1.0L, prod = 1.0L;
  for (std::size_t k = 1; k < z; ++k) {
    const long double kk = static_cast<long double>(k);
    const long double common = (zz - kk) / zz * (kk / zz);
    const long double plus = common / (1.0L + std::exp(-static_cast<long double>(beta) * gain));
    const long double minus = common / (1.0L + std::exp(static_cast<long double>(beta) * gain));
    prod *= minus / plus;
    sum += prod;
  }
  return 1.0L / sum;
}

// Grassmann-Taksar-Heyman elimination for the stationary vector of an
// irreducible row-stochastic matrix; subtraction-free, so accurate even when
// transition probabilities span many orders of magnitude.
inline std::vector<double> gth_stationary(std::vector<std::vector<long double>> a) {
  const std::size_t n = a.size();
  for (std::size_t k = n - 1; k > 0; --k) {
    long double s = 0.0L;
    for (std::size_t j = 0; j < k; ++j) s += a[k][j];
    for (std::size_t i = 0; i < k; ++i) a[i][k] /= s;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) a[i][j] += a[i][k] * a[k][j];
    }
  }
  std::vector<long double> pi(n, 0.0L);
  pi[0] = 1.0L;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) pi[j] += pi[i] * a[i][j];
  }
  long double total = 0.0L;
  for (auto v : pi) total += v;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(pi[i] / total);
  return out;
}

// Seeded generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  govsim::MixtureState state() { return {uniform(0, 1), uniform(0, 1), uniform(0, 1)}; }
  govsim::MixtureState interior() { return {uniform(0.01, 0.99), uniform(0.01, 0.99), uniform(0.01, 0.99)}; }

  ModelParams params() {
    ModelParams p;
    p.user_benefit = uniform(0.1, 10);
    p.risk_factor = uniform(-3, 1);
    p.creator_benefit = uniform(0.1, 10);
    p.safety_cost = uniform(0, 5);
    p.regulator_funding = uniform(0.1, 10);
    p.regulation_cost = uniform(0, 5);
    p.punishment_impact = uniform(0, 5);
    p.punishment_cost = uniform(0, 5);
    p.capture_reward = uniform(0, 10);
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Central finite difference of f: R^3 -> R^3 at s.
template <class F>
std::array<std::array<double, 3>, 3> finite_difference_jacobian(F&& f, std::array<double, 3> s, double h) {
  std::array<std::array<double, 3>, 3> jac{};
  for (int j = 0; j < 3; ++j) {
    auto up = s, down = s;
    up[j] += h;
    down[j] -= h;
    const auto fu = f(up), fd = f(down);
    for (int i = 0; i < 3; ++i) jac[i][j] = (fu[i] - fd[i]) / (2.0 * h);
  }
  return jac;
}

// Replicator field built on the table sums above.
inline std::array<double, 3> field_reference(ModelVariant m, const ModelParams& p, std::array<double, 3> s) {
  const double x = s[0], y = s[1], z = s[2];
  std::array<double, 3> d{};
  d[0] = brute_difference(m, p, 0, x, y, z);
  d[1] = brute_difference(m, p, 1, x, y, z);
  d[2] = brute_difference(m, p, 2, x, y, z);
  return {x * (1 - x) * d[0], y * (1 - y) * d[1], z * (1 - z) * d[2]};
}

}  // namespace testing_support
