#pragma once

// Parameter sweeps and the named figure presets.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "govsim/config.hpp"
#include "govsim/csv.hpp"
#include "govsim/equilibria.hpp"
#include "govsim/finite.hpp"
#include "govsim/limit_cycle.hpp"
#include "govsim/params.hpp"
#include "govsim/replicator.hpp"
#include "govsim/svg.hpp"

namespace govsim {

enum class SweepMode { Stationary, Replicator };

struct SweepSpec {
  ModelVariant variant = ModelVariant::Baseline;
  ModelParams base;
  FinitePopulationConfig finite;
  IndexConvention convention = IndexConvention::TargetMutant;
  ReplicatorSettings replicator;
  SweepMode mode = SweepMode::Stationary;
  std::string parameter = "b_fo";  // a ModelParams key, or "beta" in stationary mode
  std::vector<double> grid;
  unsigned threads = 1;
};

inline void validate(const SweepSpec& spec) {
  if (spec.grid.empty()) throw ConfigError("sweep grid is empty");
  const bool up = spec.grid.size() < 2 || spec.grid[1] > spec.grid[0];
  for (std::size_t i = 1; i < spec.grid.size(); ++i) {
    if (up ? !(spec.grid[i] > spec.grid[i - 1]) : !(spec.grid[i] < spec.grid[i - 1])) {
      throw ConfigError("sweep grid must be strictly monotone");
    }
  }
  const bool is_beta = spec.parameter == "beta";
  if (!is_beta && !find_param_field(spec.parameter)) {
    throw ConfigError("unknown sweep parameter '" + spec.parameter +
                      "' (accepted: b_u, epsilon, b_p, c_p, b_r, c_r, u, v, b_fo, beta)");
  }
  if (is_beta && spec.mode == SweepMode::Replicator) {
    throw ConfigError("beta has no effect on the replicator dynamics; sweep a model parameter");
  }
  if (spec.threads == 0) throw ConfigError("threads must be >= 1");
}

// n evenly spaced values from lo to hi inclusive; the last one is exactly hi.
inline std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (n == 0) throw ConfigError("grid needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  g.back() = hi;
  return g;
}

struct SweepRow {
  double value = 0.0;
  std::array<double, kProfileCount> stationary{};  // canonical index, stationary mode
  MixtureState endpoint;                            // replicator mode
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
};

namespace detail {

template <class E>
[[noreturn]] void rethrow_at(const E& e, const std::string& where) {
  throw E(where + ": " + e.what());
}

inline SweepRow sweep_point(const SweepSpec& spec, double value) {
  SweepRow row;
  row.value = value;
  ModelParams params = spec.base;
  FinitePopulationConfig finite = spec.finite;
  if (spec.parameter == "beta") {
    finite.beta = value;
  } else {
    params.*find_param_field(spec.parameter)->member = value;
  }
  const std::string where = "at " + spec.parameter + "=" + format_short(value);
  try {
    if (spec.mode == SweepMode::Stationary) {
      const auto chain = build_transition_matrix(spec.variant, params, finite, spec.convention);
      row.stationary = stationary_distribution(chain).probabilities;
    } else {
      row.endpoint = integrate(spec.variant, params, spec.replicator).final_state();
    }
  } catch (const ParameterError& e) {
    throw ParameterError(e.field(), where + ": " + e.what());
  } catch (const ConfigError& e) {
    rethrow_at(e, where);
  } catch (const NumericalError& e) {
    rethrow_at(e, where);
  } catch (const PreconditionError& e) {
    rethrow_at(e, where);
  } catch (const IoError& e) {
    rethrow_at(e, where);
  }
  return row;
}

}  // namespace detail

// Evaluates every grid point; rows come back in grid order regardless of threads.
inline SweepResult run_sweep(const SweepSpec& spec) {
  validate(spec);
  SweepResult result;
  result.spec = spec;
  result.rows.resize(spec.grid.size());
  const std::size_t workers = std::min<std::size_t>(spec.threads, spec.grid.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < spec.grid.size(); ++i) result.rows[i] = detail::sweep_point(spec, spec.grid[i]);
    return result;
  }

  std::vector<std::exception_ptr> errors(spec.grid.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < spec.grid.size(); i += workers) {
          try {
            result.rows[i] = detail::sweep_point(spec, spec.grid[i]);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);  // first failing grid index
  }
  return result;
}

inline std::string sweep_csv(const SweepResult& result) {
  const auto variant = result.spec.variant;
  std::string out = "swept_param,value";
  if (result.spec.mode == SweepMode::Stationary) {
    for (auto i : kTableOrder) out += ",state_" + label(variant, StrategyProfile::from_index(i));
  } else {
    out += ",x,y,z";
  }
  out += '\n';
  for (const auto& row : result.rows) {
    out += result.spec.parameter + ',' + format_double(row.value);
    if (result.spec.mode == SweepMode::Stationary) {
      for (auto i : kTableOrder) out += ',' + format_double(row.stationary[i]);
    } else {
      for (double c : {row.endpoint.x, row.endpoint.y, row.endpoint.z}) out += ',' + format_double(c);
    }
    out += '\n';
  }
  return out;
}

inline svg::LineChart sweep_chart(const SweepResult& result, std::string title) {
  svg::LineChart chart;
  chart.title = std::move(title);
  chart.x_label = result.spec.parameter;
  chart.y_range = std::pair{0.0, 1.0};
  const auto variant = result.spec.variant;
  if (result.spec.mode == SweepMode::Stationary) {
    chart.y_label = "stationary probability";
    for (auto i : kTableOrder) {
      svg::Series s{label(variant, StrategyProfile::from_index(i)), {}, {}};
      for (const auto& row : result.rows) {
        s.xs.push_back(row.value);
        s.ys.push_back(row.stationary[i]);
      }
      chart.series.push_back(std::move(s));
    }
  } else {
    chart.y_label = "final frequency";
    const char* names[3] = {"x (trust)", "y (safe creators)", "z (enforcing regulators)"};
    for (std::size_t c = 0; c < 3; ++c) {
      svg::Series s{names[c], {}, {}};
      for (const auto& row : result.rows) {
        s.xs.push_back(row.value);
        s.ys.push_back(row.endpoint.at(kAllRoles[c]));
      }
      chart.series.push_back(std::move(s));
    }
  }
  return chart;
}

inline svg::LineChart trajectory_chart(const Trajectory& traj, std::string title) {
  svg::LineChart chart;
  chart.title = std::move(title);
  chart.x_label = "t";
  chart.y_label = "frequency";
  chart.y_range = std::pair{0.0, 1.0};
  const char* names[3] = {"x (trust)", "y (safe creators)", "z (enforcing regulators)"};
  for (std::size_t c = 0; c < 3; ++c) {
    svg::Series s{names[c], {}, {}};
    s.xs.reserve(traj.samples.size());
    s.ys.reserve(traj.samples.size());
    for (const auto& sample : traj.samples) {
      s.xs.push_back(sample.t);
      s.ys.push_back(sample.state.at(kAllRoles[c]));
    }
    chart.series.push_back(std::move(s));
  }
  return chart;
}

inline svg::BarChart stationary_chart(ModelVariant variant, const StationaryDistribution& dist,
                                      std::string title) {
  svg::BarChart chart;
  chart.title = std::move(title);
  chart.y_label = "stationary probability";
  chart.y_range = std::pair{0.0, 1.0};
  svg::BarGroup group{std::string(to_string(variant)), {}};
  for (auto i : kTableOrder) {
    chart.categories.push_back(label(variant, StrategyProfile::from_index(i)));
    group.values.push_back(dist.probabilities[i]);
  }
  chart.groups.push_back(std::move(group));
  return chart;
}

// "b_u=4 epsilon=0.5 ..." for chart subtitles.
inline std::string params_subtitle(const ModelParams& p) {
  std::string s;
  for (const auto& f : kParamFields) {
    if (!s.empty()) s += ' ';
    s += std::string(f.key) + '=' + format_short(p.*f.member);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Presets

// Caller-supplied values the figure captions leave open.
struct PresetInputs {
  std::optional<double> epsilon;
  std::optional<double> capture_reward;   // fig7
  std::optional<double> regulation_cost;  // fig7
  std::optional<std::vector<double>> capture_grid;  // fig5, fig6
  bool svg = false;
  double t_end = kDefaultHorizon;
  double dt = kDefaultStep;
  std::size_t thin = 10;
  unsigned threads = 1;
};

// Documented suggestions for the open inputs; not applied automatically.
inline constexpr std::array<double, 2> kSuggestedEpsilon{-0.5, 0.5};
inline std::vector<double> suggested_capture_grid() { return linear_grid(0.0, 8.0, 33); }

struct Artifact {
  std::string filename;
  std::string content;
  std::string summary;  // one line for the console
};

struct PresetResult {
  std::string id;
  std::vector<Artifact> artifacts;  // manifest last
};

inline const std::vector<std::string>& preset_ids() {
  static const std::vector<std::string> ids{"fig4a", "fig4b", "fig4c", "fig4d", "fig4e", "fig4f",
                                            "fig5",  "fig6",  "fig7",  "fig8a", "fig8b", "fig8c",
                                            "fig8d", "fig8e", "fig8f"};
  return ids;
}

struct TrajectoryPreset {
  ModelVariant variant;
  ModelParams params;
  double start;  // all three populations start here
};

namespace detail {

// Shared by the trajectory panels: v fixed at 0.5 and b_fo derived from the
// stated difference b_fo - v.
inline ModelParams trajectory_base(double user_benefit, double regulator_funding, double epsilon,
                                   double capture_minus_cost) {
  ModelParams p;
  p.user_benefit = user_benefit;
  p.regulator_funding = regulator_funding;
  p.risk_factor = epsilon;
  p.safety_cost = 0.5;
  p.punishment_impact = 1.5;
  p.regulation_cost = 0.5;
  p.punishment_cost = 0.5;
  p.capture_reward = p.punishment_cost + capture_minus_cost;
  return p;
}

// Finite-population settings shared by the stationary presets.
inline ModelParams stationary_base(double regulation_cost) {
  ModelParams p;
  p.user_benefit = 4.0;
  p.regulator_funding = 4.0;
  p.creator_benefit = 4.0;
  p.punishment_impact = 1.5;
  p.punishment_cost = 0.5;
  p.safety_cost = 0.5;
  p.regulation_cost = regulation_cost;
  return p;
}

inline std::string file_tag(const ModelParams& p, std::string_view skip = {}) {
  std::string s;
  for (const auto& f : kParamFields) {
    if (f.key == skip) continue;
    s += '_' + std::string(f.key) + format_short(p.*f.member);
  }
  return s;
}

inline std::string require_note(std::string_view id) {
  return "preset " + std::string(id) + " needs inputs its figure does not state";
}

}  // namespace detail

inline std::optional<TrajectoryPreset> trajectory_preset(std::string_view id) {
  if (id.size() != 5 || (id.substr(0, 4) != "fig4" && id.substr(0, 4) != "fig8")) return std::nullopt;
  const char panel = id[4];
  if (panel < 'a' || panel > 'f') return std::nullopt;
  const double start = (panel - 'a') % 2 == 0 ? 0.1 : 0.5;
  const int pair = (panel - 'a') / 2;
  if (id[3] == '4') {
    const double eps = std::array{0.01, -0.5, -1.0}[pair];
    return TrajectoryPreset{ModelVariant::RegulatorReward, detail::trajectory_base(4.0, 4.0, eps, 1.5), start};
  }
  const double eps = pair == 1 ? -0.5 : -1.2;
  const double benefits = pair == 2 ? 1.0 : 4.0;
  return TrajectoryPreset{ModelVariant::ConditionalTrust,
                          detail::trajectory_base(benefits, benefits, eps, 5.0), start};
}

namespace detail {

inline std::string manifest_header(std::string_view id) {
  return "# preset " + std::string(id) + "\n# every resolved setting follows; this file parses as a run config\n";
}

inline PresetResult run_trajectory_preset(std::string_view id, const TrajectoryPreset& preset,
                                          const PresetInputs& in) {
  RunConfig cfg;
  cfg.variant = preset.variant;
  cfg.params = preset.params;
  cfg.replicator = {{preset.start, preset.start, preset.start}, in.t_end, in.dt, in.thin};
  cfg.emit_svg = in.svg;

  const auto traj = integrate(cfg.variant, cfg.params, cfg.replicator);
  const auto cycle = detect_limit_cycle(traj);
  const auto& end = traj.final_state();

  const std::string stem = std::string(id) + "_" + std::string(to_string(cfg.variant)) +
                           file_tag(cfg.params) + "_start" + format_short(preset.start);
  PresetResult r;
  r.id = std::string(id);
  r.artifacts.push_back({stem + ".csv", trajectory_csv(traj),
                         "trajectory to t=" + format_short(traj.t_end()) + " ends at (" +
                             format_short(end.x) + ", " + format_short(end.y) + ", " +
                             format_short(end.z) + ")" +
                             (cycle.detected ? ", limit cycle with period " + format_short(cycle.period)
                                             : std::string())});
  if (in.svg) {
    auto chart = trajectory_chart(traj, std::string(id) + ": " + std::string(to_string(cfg.variant)));
    chart.subtitle = params_subtitle(cfg.params) + " start=" + format_short(preset.start);
    r.artifacts.push_back({stem + ".svg", svg::render(chart), "trajectory chart"});
  }
  std::string manifest = manifest_header(id) + "# limit_cycle_detected = " +
                         (cycle.detected ? "true" : "false") + "\n" + dump_config(cfg);
  r.artifacts.push_back({std::string(id) + "_manifest.txt", manifest, "manifest"});
  return r;
}

inline std::string grid_comment(const std::vector<double>& grid) {
  std::string s = "# b_fo grid:";
  for (double v : grid) s += ' ' + format_short(v);
  return s + '\n';
}

inline PresetResult run_stationary_preset(std::string_view id, double regulation_cost, const PresetInputs& in) {
  std::vector<std::string> missing;
  if (!in.epsilon) missing.push_back("epsilon (--epsilon, suggested -0.5 or 0.5)");
  if (!in.capture_grid) missing.push_back("b_fo grid (--bfo-grid, suggested 0:8:33)");
  if (!missing.empty()) {
    std::string msg = require_note(id) + ":";
    for (const auto& m : missing) msg += " " + m + ";";
    msg.pop_back();
    throw ConfigError(msg);
  }
  RunConfig cfg;
  cfg.params = stationary_base(regulation_cost);
  cfg.params.risk_factor = *in.epsilon;
  cfg.emit_svg = in.svg;

  PresetResult r;
  r.id = std::string(id);
  const auto& grid = *in.capture_grid;
  const std::string range = "_b_fo" + format_short(grid.front()) + "to" + format_short(grid.back()) + "n" +
                            std::to_string(grid.size());
  for (auto variant : {ModelVariant::RegulatorReward, ModelVariant::ConditionalTrust}) {
    cfg.variant = variant;
    SweepSpec spec;
    spec.variant = variant;
    spec.base = cfg.params;
    spec.finite = cfg.finite;
    spec.parameter = "b_fo";
    spec.grid = grid;
    spec.threads = in.threads;
    const auto result = run_sweep(spec);
    const std::string stem = std::string(id) + "_" + std::string(to_string(variant)) +
                             file_tag(cfg.params, "b_fo") + range + "_beta" + format_short(cfg.finite.beta) +
                             "_n" + std::to_string(cfg.finite.n_user);
    r.artifacts.push_back({stem + ".csv", sweep_csv(result),
                           "stationary distribution over " + std::to_string(grid.size()) + " b_fo values"});
    if (in.svg) {
      auto chart = sweep_chart(result, std::string(id) + ": " + std::string(to_string(variant)));
      chart.subtitle = params_subtitle(cfg.params) + " beta=" + format_short(cfg.finite.beta);
      r.artifacts.push_back({stem + ".svg", svg::render(chart), "sweep chart"});
    }
  }
  cfg.variant = ModelVariant::RegulatorReward;
  std::string manifest = manifest_header(id) +
                         "# variants: regulator_reward, conditional_trust (b_fo below is the grid start)\n" +
                         grid_comment(grid);
  cfg.params.capture_reward = grid.front();
  manifest += dump_config(cfg);
  r.artifacts.push_back({std::string(id) + "_manifest.txt", manifest, "manifest"});
  return r;
}

inline PresetResult run_graph_preset(std::string_view id, const PresetInputs& in) {
  std::vector<std::string> missing;
  if (!in.epsilon) missing.push_back("epsilon (--epsilon, suggested -0.5 or 0.5)");
  if (!in.capture_reward) missing.push_back("b_fo (--bfo)");
  if (!in.regulation_cost) missing.push_back("c_r (--c-r, 0.5 or 5 as in the sweep presets)");
  if (!missing.empty()) {
    std::string msg = require_note(id) + ":";
    for (const auto& m : missing) msg += " " + m + ";";
    msg.pop_back();
    throw ConfigError(msg);
  }
  RunConfig cfg;
  cfg.params = stationary_base(*in.regulation_cost);
  cfg.params.risk_factor = *in.epsilon;
  cfg.params.capture_reward = *in.capture_reward;
  cfg.emit_svg = in.svg;

  PresetResult r;
  r.id = std::string(id);
  for (auto variant : {ModelVariant::RegulatorReward, ModelVariant::ConditionalTrust}) {
    const auto chain = build_transition_matrix(variant, cfg.params, cfg.finite, cfg.convention);
    const auto dist = stationary_distribution(chain);
    const auto edges = transition_graph(chain);
    const std::string stem = std::string(id) + "_" + std::string(to_string(variant)) + file_tag(cfg.params) +
                             "_beta" + format_short(cfg.finite.beta) + "_n" + std::to_string(cfg.finite.n_user);
    std::size_t best = kTableOrder[0];
    for (auto i : kTableOrder) {
      if (dist.probabilities[i] > dist.probabilities[best]) best = i;
    }
    r.artifacts.push_back({stem + "_stationary.csv", stationary_csv(variant, dist),
                           "most visited state " + label(variant, StrategyProfile::from_index(best)) + " (" +
                               format_short(dist.probabilities[best]) + ")"});
    r.artifacts.push_back({stem + "_graph.csv", transition_graph_csv(variant, edges),
                           std::to_string(edges.size()) + " neighbour transitions"});
    if (in.svg) {
      auto chart = stationary_chart(variant, dist, std::string(id) + ": " + std::string(to_string(variant)));
      chart.subtitle = params_subtitle(cfg.params) + " beta=" + format_short(cfg.finite.beta);
      r.artifacts.push_back({stem + "_stationary.svg", svg::render(chart), "stationary chart"});
    }
  }
  cfg.variant = ModelVariant::RegulatorReward;
  r.artifacts.push_back({std::string(id) + "_manifest.txt",
                         manifest_header(id) + "# variants: regulator_reward, conditional_trust\n" +
                             dump_config(cfg),
                         "manifest"});
  return r;
}

}  // namespace detail

inline PresetResult run_preset(std::string_view id, const PresetInputs& inputs = {}) {
  if (auto traj = trajectory_preset(id)) return detail::run_trajectory_preset(id, *traj, inputs);
  if (id == "fig5") return detail::run_stationary_preset(id, 0.5, inputs);
  if (id == "fig6") return detail::run_stationary_preset(id, 5.0, inputs);
  if (id == "fig7") return detail::run_graph_preset(id, inputs);
  std::string known;
  for (const auto& p : preset_ids()) known += (known.empty() ? "" : ", ") + p;
  throw ConfigError("unknown preset '" + std::string(id) + "' (known: " + known + ")");
}

}  // namespace govsim
