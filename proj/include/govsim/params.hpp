#pragma once

// Core types shared by every part of the simulator: model variants, roles,
// strategy profiles, game parameters and the error hierarchy.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace govsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model parameter lies outside its admissible domain.
class ParameterError : public Error {
 public:
  ParameterError(std::string field, const std::string& message)
      : Error(message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Malformed configuration, unknown key, missing required input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Integration blew up, singular linear system, non-finite result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Caller violated an operation's precondition (empty input, state outside the cube, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

enum class ModelVariant { Baseline, RegulatorReward, ConditionalTrust };

inline constexpr std::array<ModelVariant, 3> kAllVariants{
    ModelVariant::Baseline, ModelVariant::RegulatorReward, ModelVariant::ConditionalTrust};

inline std::string_view to_string(ModelVariant v) {
  switch (v) {
    case ModelVariant::Baseline: return "baseline";
    case ModelVariant::RegulatorReward: return "regulator_reward";
    case ModelVariant::ConditionalTrust: return "conditional_trust";
  }
  return "unknown";
}

inline std::optional<ModelVariant> parse_variant(std::string_view name) {
  for (auto v : kAllVariants) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

enum class Role { User, Creator, Regulator };

inline constexpr std::array<Role, 3> kAllRoles{Role::User, Role::Creator, Role::Regulator};

inline std::string_view to_string(Role r) {
  switch (r) {
    case Role::User: return "user";
    case Role::Creator: return "creator";
    case Role::Regulator: return "regulator";
  }
  return "unknown";
}

// Cooperate means: user trusts (T, or CT under conditional trust), creator
// complies, regulator enforces. Defect means N / D / D.
enum class Action { Cooperate, Defect };

inline constexpr Action flip(Action a) {
  return a == Action::Cooperate ? Action::Defect : Action::Cooperate;
}

struct StrategyProfile {
  Action user = Action::Defect;
  Action creator = Action::Defect;
  Action regulator = Action::Defect;

  // 4*(user cooperates) + 2*(creator complies) + (regulator enforces); NDD = 0, TCC = 7.
  constexpr std::size_t index() const {
    return 4u * (user == Action::Cooperate) + 2u * (creator == Action::Cooperate) +
           (regulator == Action::Cooperate);
  }

  static constexpr StrategyProfile from_index(std::size_t i) {
    return {(i & 4u) ? Action::Cooperate : Action::Defect,
            (i & 2u) ? Action::Cooperate : Action::Defect,
            (i & 1u) ? Action::Cooperate : Action::Defect};
  }

  constexpr Action at(Role r) const {
    switch (r) {
      case Role::User: return user;
      case Role::Creator: return creator;
      case Role::Regulator: return regulator;
    }
    return user;
  }

  constexpr StrategyProfile with(Role r, Action a) const {
    StrategyProfile p = *this;
    switch (r) {
      case Role::User: p.user = a; break;
      case Role::Creator: p.creator = a; break;
      case Role::Regulator: p.regulator = a; break;
    }
    return p;
  }

  friend constexpr bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

inline constexpr std::size_t kProfileCount = 8;

// Order in which the payoff tables list their rows: TCC, TCD, TDC, TDD, NCC, ..., NDD.
// Every state-indexed CSV uses this order.
inline constexpr std::array<std::size_t, kProfileCount> kTableOrder{7, 6, 5, 4, 3, 2, 1, 0};

// "TCD", "CTCC", "NDD", ...
inline std::string label(ModelVariant variant, StrategyProfile p) {
  std::string s;
  if (p.user == Action::Cooperate) {
    s = variant == ModelVariant::ConditionalTrust ? "CT" : "T";
  } else {
    s = "N";
  }
  s += p.creator == Action::Cooperate ? 'C' : 'D';
  s += p.regulator == Action::Cooperate ? 'C' : 'D';
  return s;
}

struct PayoffTriple {
  double user = 0.0;
  double creator = 0.0;
  double regulator = 0.0;

  constexpr double at(Role r) const {
    switch (r) {
      case Role::User: return user;
      case Role::Creator: return creator;
      case Role::Regulator: return regulator;
    }
    return user;
  }

  friend constexpr bool operator==(const PayoffTriple&, const PayoffTriple&) = default;
};

// Defaults are the finite-population figure settings (all benefits 4) with a
// positive risk factor and no capture reward.
struct ModelParams {
  double user_benefit = 4.0;       // b_U
  double risk_factor = 0.5;        // epsilon, fraction of b_U kept when the creator defects
  double creator_benefit = 4.0;    // b_P
  double safety_cost = 0.5;        // c_P
  double regulator_funding = 4.0;  // b_R
  double regulation_cost = 0.5;    // c_R
  double punishment_impact = 1.5;  // u
  double punishment_cost = 0.5;    // v
  double capture_reward = 0.0;     // b_fo, ignored by the baseline model

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Lower bound standing in for an unbounded-below risk factor.
inline constexpr double kRiskFactorFloor = -1.0e6;

struct ParamField {
  std::string_view key;  // configuration / CSV name
  double ModelParams::*member;
  std::string_view description;
};

inline constexpr std::array<ParamField, 9> kParamFields{{
    {"b_u", &ModelParams::user_benefit, "user benefit from adopting safe AI"},
    {"epsilon", &ModelParams::risk_factor, "risk factor, fraction of b_u received from unsafe AI"},
    {"b_p", &ModelParams::creator_benefit, "creator benefit from selling the product"},
    {"c_p", &ModelParams::safety_cost, "extra cost of safe development"},
    {"b_r", &ModelParams::regulator_funding, "regulator funding, paid upon adoption"},
    {"c_r", &ModelParams::regulation_cost, "cost of developing rules and capture technology"},
    {"u", &ModelParams::punishment_impact, "impact of institutional punishment on a creator"},
    {"v", &ModelParams::punishment_cost, "cost of institutional punishment to the regulator"},
    {"b_fo", &ModelParams::capture_reward, "reward to regulators for catching unsafe creators"},
}};

inline const ParamField* find_param_field(std::string_view key) {
  for (const auto& f : kParamFields) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

inline void validate(const ModelParams& p) {
  for (const auto& f : kParamFields) {
    if (!std::isfinite(p.*f.member)) {
      throw ParameterError(std::string(f.key), std::string(f.key) + " must be finite");
    }
  }
  if (!(p.risk_factor > kRiskFactorFloor && p.risk_factor <= 1.0)) {
    throw ParameterError("epsilon", "epsilon must satisfy -1e6 < epsilon <= 1 (got " +
                                        std::to_string(p.risk_factor) + ")");
  }
  auto non_negative = [](double value, std::string_view key) {
    if (value < 0.0) {
      throw ParameterError(std::string(key), std::string(key) + " must be >= 0 (got " +
                                                 std::to_string(value) + ")");
    }
  };
  non_negative(p.safety_cost, "c_p");
  non_negative(p.regulation_cost, "c_r");
  non_negative(p.punishment_impact, "u");
  non_negative(p.punishment_cost, "v");
  non_negative(p.capture_reward, "b_fo");
}

// Population frequencies: x trusting users, y complying creators, z enforcing regulators.
struct MixtureState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double at(Role r) const {
    switch (r) {
      case Role::User: return x;
      case Role::Creator: return y;
      case Role::Regulator: return z;
    }
    return x;
  }

  friend constexpr bool operator==(const MixtureState&, const MixtureState&) = default;
};

using ReplicatorState = MixtureState;

inline void validate(const MixtureState& s) {
  for (double c : {s.x, s.y, s.z}) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw PreconditionError("state component " + std::to_string(c) + " outside [0, 1]");
    }
  }
}

}  // namespace govsim
