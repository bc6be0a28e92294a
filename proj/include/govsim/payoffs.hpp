#pragma once

// Payoff tables of the three model variants and the fitness expressions
// derived from them.
//
// The tables are data: one row per strategy profile, generated from the
// parameters. expected_fitness() is the brute-force expectation over the
// table and serves as the oracle for the closed-form fitness differences.

#include <array>

#include "govsim/params.hpp"

namespace govsim {

using PayoffTable = std::array<PayoffTriple, kProfileCount>;

inline PayoffTable payoff_table(ModelVariant variant, const ModelParams& p) {
  validate(p);
  const double bU = p.user_benefit, eps = p.risk_factor, bP = p.creator_benefit;
  const double cP = p.safety_cost, bR = p.regulator_funding, cR = p.regulation_cost;
  const double u = p.punishment_impact, v = p.punishment_cost;
  const double reward = variant == ModelVariant::Baseline ? 0.0 : p.capture_reward;

  struct Row {
    const char* profile;  // user, creator, regulator as T/N, C/D, C/D
    PayoffTriple payoff;
  };
  // clang-format off
  std::array<Row, kProfileCount> rows{{
      {"TCC", {bU,       bP - cP, bR - cR}},
      {"TCD", {bU,       bP - cP, bR}},
      {"TDC", {eps * bU, bP - u,  bR - cR - v + reward}},
      {"TDD", {eps * bU, bP,      bR}},
      {"NCC", {0.0,      -cP,     -cR}},
      {"NCD", {0.0,      -cP,     0.0}},
      {"NDC", {0.0,      0.0,     -cR}},
      {"NDD", {0.0,      0.0,     0.0}},
  }};
  // clang-format on
  if (variant == ModelVariant::ConditionalTrust) {
    // Conditional trusters stay away when the regulator does not enforce.
    rows[1].payoff = {0.0, -cP, 0.0};
    rows[3].payoff = {0.0, 0.0, 0.0};
  }

  PayoffTable table{};
  for (const auto& row : rows) {
    auto act = [](char c) { return c == 'T' || c == 'C' ? Action::Cooperate : Action::Defect; };
    StrategyProfile profile{act(row.profile[0]), act(row.profile[1]), act(row.profile[2])};
    table[profile.index()] = row.payoff;
  }
  return table;
}

inline PayoffTriple payoff(ModelVariant variant, const ModelParams& params,
                           StrategyProfile profile) {
  return payoff_table(variant, params)[profile.index()];
}

namespace detail {

inline double frequency_weight(Action a, double cooperator_fraction) {
  return a == Action::Cooperate ? cooperator_fraction : 1.0 - cooperator_fraction;
}

inline std::array<Role, 2> other_roles(Role r) {
  switch (r) {
    case Role::User: return {Role::Creator, Role::Regulator};
    case Role::Creator: return {Role::User, Role::Regulator};
    case Role::Regulator: return {Role::User, Role::Creator};
  }
  return {Role::Creator, Role::Regulator};
}

}  // namespace detail

// Average payoff of a focal individual of `role` playing `strategy` against
// one opponent drawn from each other population with the state's frequencies.
inline double expected_fitness(ModelVariant variant, const ModelParams& params, Role role,
                               Action strategy, const MixtureState& state) {
  validate(state);
  const PayoffTable table = payoff_table(variant, params);
  const auto [first, second] = detail::other_roles(role);
  double total = 0.0;
  for (Action a : {Action::Cooperate, Action::Defect}) {
    for (Action b : {Action::Cooperate, Action::Defect}) {
      const double weight = detail::frequency_weight(a, state.at(first)) *
                            detail::frequency_weight(b, state.at(second));
      const StrategyProfile profile = StrategyProfile{}.with(role, strategy).with(first, a).with(second, b);
      total += weight * table[profile.index()].at(role);
    }
  }
  return total;
}

namespace detail {

// Cooperator-minus-defector fitness for all three roles; no validation.
inline std::array<double, 3> fitness_differences(ModelVariant variant, const ModelParams& p,
                                                 const MixtureState& s) {
  const double exposure = s.x * (1.0 - s.y);  // trusting users meeting unsafe creators
  const double user_gain = p.user_benefit * (s.y + p.risk_factor * (1.0 - s.y));
  const double creator = -p.safety_cost + p.punishment_impact * s.x * s.z;
  switch (variant) {
    case ModelVariant::Baseline:
      return {user_gain, creator, -p.regulation_cost - exposure * p.punishment_cost};
    case ModelVariant::RegulatorReward:
      return {user_gain, creator,
              -p.regulation_cost + exposure * (p.capture_reward - p.punishment_cost)};
    case ModelVariant::ConditionalTrust:
      return {user_gain * s.z, creator,
              -p.regulation_cost + p.regulator_funding * s.x +
                  (p.capture_reward - p.punishment_cost) * exposure};
  }
  return {0.0, 0.0, 0.0};
}

}  // namespace detail

// Closed-form f_cooperate - f_defect for one role.
inline double fitness_difference(ModelVariant variant, const ModelParams& params, Role role,
                                 const MixtureState& state) {
  validate(params);
  validate(state);
  return detail::fitness_differences(variant, params, state)[static_cast<std::size_t>(role)];
}

}  // namespace govsim
