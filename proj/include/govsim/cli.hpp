#pragma once

// Command-line front end. Kept in a header so tests can drive run_cli in-process.
//
// Exit codes: 0 success, 2 configuration/parameter error (nothing written),
// 3 numerical or I/O failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "govsim/config.hpp"
#include "govsim/csv.hpp"
#include "govsim/equilibria.hpp"
#include "govsim/experiments.hpp"
#include "govsim/finite.hpp"
#include "govsim/limit_cycle.hpp"
#include "govsim/payoffs.hpp"
#include "govsim/replicator.hpp"
#include "govsim/svg.hpp"

namespace govsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// "lo:hi:n"
inline std::vector<double> parse_grid(const std::string& text, const std::string& flag) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    fields.push_back(text.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (fields.size() != 3) throw ConfigError(flag + ": expected lo:hi:n, got '" + text + "'");
  const double lo = detail::config_number(flag, fields[0]);
  const double hi = detail::config_number(flag, fields[1]);
  const std::size_t n = detail::config_count(flag, fields[2]);
  if (n == 0 || (n > 1 && !(hi != lo))) throw ConfigError(flag + ": need n >= 1 and lo != hi when n > 1");
  return linear_grid(lo, hi, n);
}

struct Options {
  std::string config_path;
  std::string out;
  bool svg = false;
  bool quiet = false;
  std::vector<std::string> sets;
  std::string initial;
  std::optional<double> t_end, dt, beta;
  std::optional<std::size_t> thin;
  std::string sweep_param = "b_fo";
  std::string grid;
  std::string mode = "stationary";
  unsigned threads = 1;
  std::string preset;
  std::optional<double> epsilon, bfo, c_r;
  std::string bfo_grid;
};

namespace detail {

inline RunConfig resolve_config(const Options& o) {
  RunConfig cfg = o.config_path.empty() ? parse_config("") : load_config(o.config_path);
  for (const auto& s : o.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
    apply_setting(cfg, govsim::detail::trim(std::string_view(s).substr(0, eq)),
                  std::string_view(s).substr(eq + 1));
  }
  if (!o.initial.empty()) apply_setting(cfg, "initial", o.initial);
  if (o.t_end) cfg.replicator.t_end = *o.t_end, std::erase(cfg.defaulted, "t_end");
  if (o.dt) cfg.replicator.dt = *o.dt, std::erase(cfg.defaulted, "dt");
  if (o.thin) cfg.replicator.thin = *o.thin, std::erase(cfg.defaulted, "thin");
  if (o.beta) cfg.finite.beta = *o.beta, std::erase(cfg.defaulted, "beta");
  if (o.svg) cfg.emit_svg = true;
  validate(cfg);
  return cfg;
}

inline std::filesystem::path output_dir(const Options& o, const RunConfig& cfg) {
  if (!o.out.empty()) return o.out;
  if (cfg.output_dir) return *cfg.output_dir;
  if (const char* env = std::getenv("GOVSIM_OUT"); env && *env) return env;
  return ".";
}

inline std::string run_stem(std::string_view command, const RunConfig& cfg) {
  return std::string(command) + "_" + std::string(to_string(cfg.variant)) + govsim::detail::file_tag(cfg.params);
}

inline std::vector<Artifact> payoff_command(const RunConfig& cfg) {
  return {{run_stem("payoff", cfg) + ".csv", payoff_table_csv(cfg.variant, cfg.params),
           "payoff table, 8 states"}};
}

inline std::vector<Artifact> replicator_command(const RunConfig& cfg) {
  const auto traj = integrate(cfg.variant, cfg.params, cfg.replicator);
  const auto& s = cfg.replicator.initial;
  const std::string stem = run_stem("replicator", cfg) + "_start" + format_short(s.x) + "-" +
                           format_short(s.y) + "-" + format_short(s.z);
  const auto& end = traj.final_state();
  std::string summary = "trajectory to t=" + format_short(traj.t_end()) + " ends at (" + format_short(end.x) +
                        ", " + format_short(end.y) + ", " + format_short(end.z) + ")";
  if (traj.samples.size() >= 3) {
    const auto cycle = detect_limit_cycle(traj);
    if (cycle.detected) summary += ", limit cycle with period " + format_short(cycle.period);
  }
  std::vector<Artifact> out{{stem + ".csv", trajectory_csv(traj), summary}};
  if (cfg.emit_svg) {
    auto chart = trajectory_chart(traj, "replicator dynamics: " + std::string(to_string(cfg.variant)));
    chart.subtitle = params_subtitle(cfg.params);
    out.push_back({stem + ".svg", svg::render(chart), "trajectory chart"});
  }
  return out;
}

inline std::vector<Artifact> equilibria_command(const RunConfig& cfg) {
  const auto reports = enumerate_equilibria(cfg.variant, cfg.params);
  std::size_t stable = 0;
  for (const auto& r : reports) stable += r.verdict == Stability::Stable;
  return {{run_stem("equilibria", cfg) + ".csv", equilibria_csv(reports),
           std::to_string(reports.size()) + " equilibria, " + std::to_string(stable) + " stable"}};
}

inline std::vector<Artifact> finite_command(const RunConfig& cfg) {
  const auto chain = build_transition_matrix(cfg.variant, cfg.params, cfg.finite, cfg.convention);
  const auto dist = stationary_distribution(chain);
  const auto edges = transition_graph(chain);
  const std::string stem = run_stem("finite", cfg) + "_beta" + format_short(cfg.finite.beta) + "_n" +
                           std::to_string(cfg.finite.n_user) + "-" + std::to_string(cfg.finite.n_creator) +
                           "-" + std::to_string(cfg.finite.n_regulator);
  std::size_t best = kTableOrder[0];
  for (auto i : kTableOrder) {
    if (dist.probabilities[i] > dist.probabilities[best]) best = i;
  }
  std::vector<Artifact> out{
      {stem + "_stationary.csv", stationary_csv(cfg.variant, dist),
       "most visited state " + label(cfg.variant, StrategyProfile::from_index(best)) + " (" +
           format_short(dist.probabilities[best]) + ")"},
      {stem + "_graph.csv", transition_graph_csv(cfg.variant, edges),
       std::to_string(edges.size()) + " neighbour transitions"}};
  if (cfg.emit_svg) {
    auto chart = stationary_chart(cfg.variant, dist, "stationary distribution");
    chart.subtitle = params_subtitle(cfg.params) + " beta=" + format_short(cfg.finite.beta);
    out.push_back({stem + "_stationary.svg", svg::render(chart), "stationary chart"});
  }
  return out;
}

inline std::vector<Artifact> sweep_command(const RunConfig& cfg, const Options& o) {
  if (o.grid.empty()) throw ConfigError("sweep needs --grid lo:hi:n");
  SweepSpec spec;
  spec.variant = cfg.variant;
  spec.base = cfg.params;
  spec.finite = cfg.finite;
  spec.convention = cfg.convention;
  spec.replicator = cfg.replicator;
  if (o.mode == "stationary") spec.mode = SweepMode::Stationary;
  else if (o.mode == "replicator") spec.mode = SweepMode::Replicator;
  else throw ConfigError("--mode: expected stationary or replicator, got '" + o.mode + "'");
  spec.parameter = o.sweep_param;
  spec.grid = parse_grid(o.grid, "--grid");
  spec.threads = o.threads;
  validate(spec);
  const auto result = run_sweep(spec);
  const std::string stem = run_stem("sweep", cfg) + "_" + o.mode + "_" + spec.parameter +
                           format_short(spec.grid.front()) + "to" + format_short(spec.grid.back()) + "n" +
                           std::to_string(spec.grid.size());
  std::vector<Artifact> out{{stem + ".csv", sweep_csv(result),
                             std::to_string(spec.grid.size()) + " grid values of " + spec.parameter}};
  if (cfg.emit_svg) {
    auto chart = sweep_chart(result, "sweep of " + spec.parameter + ": " + std::string(to_string(cfg.variant)));
    chart.subtitle = params_subtitle(cfg.params);
    out.push_back({stem + ".svg", svg::render(chart), "sweep chart"});
  }
  return out;
}

inline std::vector<Artifact> preset_command(const RunConfig& cfg, const Options& o) {
  if (o.preset.empty()) throw ConfigError("preset needs --preset <id>");
  PresetInputs in;
  in.epsilon = o.epsilon;
  in.capture_reward = o.bfo;
  in.regulation_cost = o.c_r;
  if (!o.bfo_grid.empty()) in.capture_grid = parse_grid(o.bfo_grid, "--bfo-grid");
  in.svg = cfg.emit_svg;
  if (o.t_end) in.t_end = *o.t_end;
  if (o.dt) in.dt = *o.dt;
  if (o.thin) in.thin = *o.thin;
  in.threads = o.threads;
  return run_preset(o.preset, in).artifacts;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Three-population AI governance game: payoffs, replicator dynamics, "
               "finite-population stationary distributions and figure presets.",
               "govsim"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "Run configuration file (key = value with [sections])");
    sub->add_option("--out", o.out,
                    "Output directory ('-' writes CSV to stdout). Falls back to the config's "
                    "[output] dir, then $GOVSIM_OUT, then the current directory");
    sub->add_flag("--svg", o.svg, "Also write SVG charts");
    sub->add_option("--set", o.sets, "Override a config key, e.g. --set epsilon=-0.5 (repeatable)");
    sub->add_flag("--quiet", o.quiet, "Do not echo the resolved configuration");
  };

  auto* payoff = app.add_subcommand("payoff", "Write the 8-state payoff table");
  common(payoff);

  auto* replicator = app.add_subcommand("replicator", "Integrate the replicator dynamics");
  common(replicator);
  replicator->add_option("--initial", o.initial, "Initial state x,y,z");
  replicator->add_option("--t-end", o.t_end, "Integration horizon (default 2000)");
  replicator->add_option("--dt", o.dt, "RK4 step, at most 0.1 (default 0.01)");
  replicator->add_option("--thin", o.thin, "Keep every n-th step (default 1)");

  auto* equilibria = app.add_subcommand("equilibria", "List equilibria with eigenvalues and stability");
  common(equilibria);

  auto* finite = app.add_subcommand("finite", "Stationary distribution and transition graph of the finite-population chain");
  common(finite);
  finite->add_option("--beta", o.beta, "Selection strength");

  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter over a grid");
  common(sweep);
  sweep->add_option("--sweep-param", o.sweep_param, "Parameter to vary: b_u, epsilon, b_p, c_p, b_r, c_r, u, v, b_fo or beta")
      ->capture_default_str();
  sweep->add_option("--grid", o.grid, "Grid lo:hi:n (n evenly spaced values)");
  sweep->add_option("--mode", o.mode, "stationary (8 state probabilities) or replicator (end state)")
      ->capture_default_str();
  sweep->add_option("--beta", o.beta, "Selection strength");
  sweep->add_option("--initial", o.initial, "Initial state x,y,z (replicator mode)");
  sweep->add_option("--t-end", o.t_end, "Integration horizon (replicator mode)");
  sweep->add_option("--dt", o.dt, "RK4 step (replicator mode)");
  sweep->add_option("--threads", o.threads, "Worker threads")->capture_default_str();

  auto* preset = app.add_subcommand("preset", "Reproduce a figure: fig4a-f, fig5, fig6, fig7, fig8a-f");
  common(preset);
  preset->add_option("--preset", o.preset, "Preset id");
  preset->add_option("--epsilon", o.epsilon, "Risk factor (required by fig5, fig6, fig7; suggested -0.5 or 0.5)");
  preset->add_option("--bfo", o.bfo, "Capture reward b_fo (required by fig7)");
  preset->add_option("--c-r", o.c_r, "Regulation cost c_r (required by fig7)");
  preset->add_option("--bfo-grid", o.bfo_grid, "b_fo grid lo:hi:n (required by fig5, fig6; suggested 0:8:33)");
  preset->add_option("--t-end", o.t_end, "Integration horizon for trajectory presets (default 2000)");
  preset->add_option("--dt", o.dt, "RK4 step for trajectory presets (default 0.01)");
  preset->add_option("--thin", o.thin, "Keep every n-th step for trajectory presets (default 10)");
  preset->add_option("--threads", o.threads, "Worker threads for sweeps")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    const RunConfig cfg = detail::resolve_config(o);
    if (!o.quiet) err << "# resolved configuration\n" << provenance_echo(cfg);

    std::vector<Artifact> artifacts;
    if (payoff->parsed()) artifacts = detail::payoff_command(cfg);
    else if (replicator->parsed()) artifacts = detail::replicator_command(cfg);
    else if (equilibria->parsed()) artifacts = detail::equilibria_command(cfg);
    else if (finite->parsed()) artifacts = detail::finite_command(cfg);
    else if (sweep->parsed()) artifacts = detail::sweep_command(cfg, o);
    else artifacts = detail::preset_command(cfg, o);

    if (o.out == "-") {
      for (const auto& a : artifacts) {
        if (a.filename.ends_with(".csv")) {
          out << a.content;
          err << a.filename << ": " << a.summary << "\n";
        } else if (a.filename.ends_with(".svg")) {
          err << a.filename << ": skipped (SVG is not written to stdout)\n";
        } else {
          err << a.filename << ": skipped (" << a.summary << ")\n";
        }
      }
      return kExitOk;
    }
    const auto dir = detail::output_dir(o, cfg);
    for (const auto& a : artifacts) {
      const auto path = dir / a.filename;
      write_text_file(path, a.content);
      err << path.string() << ": " << a.summary << "\n";
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PreconditionError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace govsim::cli
