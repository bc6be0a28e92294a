#pragma once

// Finite populations in the small-mutation limit.
//
// Individuals imitate within their own population under the Fermi rule. Since
// payoffs only depend on the other two populations, a mutant's fitness
// advantage over residents does not depend on how many mutants there are, and
// the fixation probability collapses to a geometric series. The 8 monomorphic
// states form a Markov chain whose neighbours differ in one population.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "govsim/params.hpp"
#include "govsim/payoffs.hpp"

namespace govsim {

struct FinitePopulationConfig {
  std::size_t n_user = 100;
  std::size_t n_creator = 100;
  std::size_t n_regulator = 100;
  double beta = 0.1;  // selection strength

  std::size_t size(Role r) const {
    switch (r) {
      case Role::User: return n_user;
      case Role::Creator: return n_creator;
      case Role::Regulator: return n_regulator;
    }
    return n_user;
  }

  friend bool operator==(const FinitePopulationConfig&, const FinitePopulationConfig&) = default;
};

inline void validate(const FinitePopulationConfig& c) {
  auto check = [](std::size_t n, const char* key) {
    if (n < 2) throw ParameterError(key, std::string(key) + " must be >= 2");
  };
  check(c.n_user, "n_u");
  check(c.n_creator, "n_c");
  check(c.n_regulator, "n_r");
  if (!(c.beta >= 0.0) || !std::isfinite(c.beta)) {
    throw ParameterError("beta", "beta must be finite and >= 0");
  }
}

// Probability that A adopts B's strategy: 1 / (1 + exp(-beta (f_B - f_A))).
inline double imitation_probability(double f_a, double f_b, double beta) {
  const double t = beta * (f_b - f_a);
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

// rho = (1 - r) / (1 - r^Z) with r = exp(-beta * delta_f), delta_f = f_mutant - f_resident.
inline double fixation_probability_closed_form(double delta_f, double beta, std::size_t population) {
  const double z = static_cast<double>(population);
  const double a = beta * delta_f;
  if (a == 0.0) return 1.0 / z;
  if (a > 0.0) return std::expm1(-a) / std::expm1(-z * a);
  // Same ratio rescaled by r^-Z so nothing overflows for disadvantageous mutants.
  return std::exp((z - 1.0) * a) * (std::expm1(a) / std::expm1(z * a));
}

// General fixation probability of a single mutant among Z-1 residents,
//   rho = 1 / (1 + sum_{i=1}^{Z-1} prod_{j=1}^{i} T-(j)/T+(j)),
// with T+-(k) = (Z-k)/Z * k/Z * [1 + exp(-+beta (f_mut(k) - f_res(k)))]^-1.
// `fitness(k)` returns {f_mutant, f_resident} when k mutants are present.
// The common (Z-k)k/Z^2 factor cancels in the ratio and is not formed.
template <class FitnessFn>
double fixation_probability_product(std::size_t population, double beta, FitnessFn&& fitness) {
  double sum = 1.0;
  double product = 1.0;
  int shift = 0;  // sum and product are stored scaled by 2^-shift
  for (std::size_t j = 1; j < population; ++j) {
    const auto [f_mutant, f_resident] = fitness(j);
    const double up = imitation_probability(f_resident, f_mutant, beta);
    const double down = imitation_probability(f_mutant, f_resident, beta);
    product *= down / up;
    sum += product;
    if (sum > 0x1p900) {
      sum = std::ldexp(sum, -900);
      product = std::ldexp(product, -900);
      shift += 900;
    }
  }
  return std::ldexp(1.0 / sum, -shift);
}

inline double fitness_gain(ModelVariant variant, const ModelParams& params, Role population,
                           Action resident, Action mutant, StrategyProfile context) {
  const PayoffTable table = payoff_table(variant, params);
  return table[context.with(population, mutant).index()].at(population) -
         table[context.with(population, resident).index()].at(population);
}

// Fixation of a single `mutant` in `population`, the other two populations
// being monomorphic at the strategies given by `context`.
inline double fixation_probability(ModelVariant variant, const ModelParams& params,
                                   const FinitePopulationConfig& config, Role population,
                                   Action resident, Action mutant, StrategyProfile context) {
  validate(config);
  if (resident == mutant) throw PreconditionError("resident and mutant strategies must differ");
  const double gain = fitness_gain(variant, params, population, resident, mutant, context);
  return fixation_probability_closed_form(gain, config.beta, config.size(population));
}

// Which state's strategy plays the mutant in entry (i -> j).
enum class IndexConvention {
  TargetMutant,  // a mutant with state j's strategy invades residents of state i
  Transposed,    // reversed reading: state i's strategy invades state j
};

using ChainMatrix = Eigen::Matrix<double, 8, 8>;

struct TransitionMatrix {
  ChainMatrix probabilities = ChainMatrix::Zero();
  ModelVariant variant = ModelVariant::Baseline;
  ModelParams params;
  FinitePopulationConfig config;
  IndexConvention convention = IndexConvention::TargetMutant;

  double operator()(std::size_t from, std::size_t to) const {
    return probabilities(static_cast<Eigen::Index>(from), static_cast<Eigen::Index>(to));
  }
};

// The population in which two profiles differ, if they differ in exactly one.
inline std::optional<Role> differing_role(StrategyProfile a, StrategyProfile b) {
  std::optional<Role> found;
  for (Role r : kAllRoles) {
    if (a.at(r) != b.at(r)) {
      if (found) return std::nullopt;
      found = r;
    }
  }
  return found;
}

inline constexpr double kPopulationCount = 3.0;

inline TransitionMatrix build_transition_matrix(ModelVariant variant, const ModelParams& params,
                                                const FinitePopulationConfig& config,
                                                IndexConvention convention = IndexConvention::TargetMutant) {
  validate(params);
  validate(config);
  TransitionMatrix m;
  m.variant = variant;
  m.params = params;
  m.config = config;
  m.convention = convention;
  for (std::size_t i = 0; i < kProfileCount; ++i) {
    const auto from = StrategyProfile::from_index(i);
    double off_diagonal = 0.0;
    for (Role r : kAllRoles) {
      const auto to = from.with(r, flip(from.at(r)));
      const auto& residents = convention == IndexConvention::TargetMutant ? from : to;
      const auto& invaders = convention == IndexConvention::TargetMutant ? to : from;
      const double rho = fixation_probability(variant, params, config, r, residents.at(r),
                                              invaders.at(r), residents);
      const double entry = rho / kPopulationCount;
      m.probabilities(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(to.index())) = entry;
      off_diagonal += entry;
    }
    m.probabilities(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0 - off_diagonal;
  }
  return m;
}

struct StationaryDistribution {
  std::array<double, kProfileCount> probabilities{};
  double residual = 0.0;  // max |(pi L - pi)_j|

  double operator[](std::size_t index) const { return probabilities[index]; }
  double operator[](StrategyProfile p) const { return probabilities[p.index()]; }
};

inline constexpr double kStationaryResidual = 1e-10;

// Left fixed vector of a row-stochastic 8x8 matrix, from (L^T - I) pi = 0 with
// one equation replaced by sum(pi) = 1.
inline StationaryDistribution stationary_distribution(const ChainMatrix& chain) {
  for (Eigen::Index i = 0; i < 8; ++i) {
    if (std::abs(chain.row(i).sum() - 1.0) > 1e-12 || (chain.row(i).array() < 0.0).any()) {
      throw PreconditionError("transition matrix is not row-stochastic");
    }
  }
  // Generator Q = L - I with the diagonal rebuilt from the off-diagonal row
  // sums; 1 - L_ii would cancel catastrophically for nearly absorbing states.
  ChainMatrix generator = chain;
  for (Eigen::Index i = 0; i < 8; ++i) {
    generator(i, i) = 0.0;
    generator(i, i) = -generator.row(i).sum();
  }
  ChainMatrix system = generator.transpose();
  system.row(7).setOnes();
  Eigen::Matrix<double, 8, 1> rhs = Eigen::Matrix<double, 8, 1>::Zero();
  rhs(7) = 1.0;

  Eigen::FullPivLU<ChainMatrix> lu(system);
  if (!lu.isInvertible()) {
    throw NumericalError("transition matrix is reducible; stationary distribution is not unique "
                         "(use beta > 0 of moderate size)");
  }
  Eigen::Matrix<double, 8, 1> pi = lu.solve(rhs);
  // One refinement step; nearly reducible chains leave ~1e-9 error otherwise.
  pi += lu.solve(rhs - system * pi);
  if (!pi.allFinite() || (pi.array() < -1e-12).any()) {
    throw NumericalError("stationary solve produced an invalid distribution (try beta > 0)");
  }
  pi = pi.cwiseMax(0.0);
  pi /= pi.sum();

  StationaryDistribution out;
  for (int i = 0; i < 8; ++i) out.probabilities[i] = pi(i);
  out.residual = (pi.transpose() * chain - pi.transpose()).cwiseAbs().maxCoeff();
  if (out.residual > kStationaryResidual) {
    throw NumericalError("stationary residual " + std::to_string(out.residual) + " too large");
  }
  return out;
}

inline StationaryDistribution stationary_distribution(const TransitionMatrix& m) {
  return stationary_distribution(m.probabilities);
}

enum class EdgeClass { Dominant, Neutral };

inline std::string_view to_string(EdgeClass c) {
  return c == EdgeClass::Dominant ? "dominant" : "neutral";
}

struct DominanceEdge {
  StrategyProfile from;
  StrategyProfile to;
  double forward = 0.0;   // L(from -> to)
  double backward = 0.0;  // L(to -> from)
  EdgeClass classification = EdgeClass::Dominant;
};

inline constexpr double kNeutralTolerance = 1e-15;

// One edge per neighbouring pair, pointing along the more probable direction;
// near-equal pairs are marked neutral and keep table order.
inline std::vector<DominanceEdge> transition_graph(const TransitionMatrix& m) {
  std::vector<DominanceEdge> edges;
  for (std::size_t a = 0; a < kProfileCount; ++a) {
    for (std::size_t b = a + 1; b < kProfileCount; ++b) {
      const auto i = kTableOrder[a], j = kTableOrder[b];
      const auto pi = StrategyProfile::from_index(i), pj = StrategyProfile::from_index(j);
      if (!differing_role(pi, pj)) continue;
      const double ij = m(i, j), ji = m(j, i);
      if (std::abs(ij - ji) <= kNeutralTolerance) {
        edges.push_back({pi, pj, ij, ji, EdgeClass::Neutral});
      } else if (ij > ji) {
        edges.push_back({pi, pj, ij, ji, EdgeClass::Dominant});
      } else {
        edges.push_back({pj, pi, ji, ij, EdgeClass::Dominant});
      }
    }
  }
  return edges;
}

}  // namespace govsim
