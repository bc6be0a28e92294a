#pragma once

// Run configuration in a flat, sectioned key-value syntax:
//
//   # comment
//   variant = regulator_reward
//
//   [model]
//   b_u = 4
//   epsilon = -0.5
//
//   [replicator]
//   initial = 0.5, 0.5, 0.5
//   t_end = 2000
//
//   [finite]
//   beta = 0.1
//
//   [output]
//   dir = "out"
//   svg = true
//
// Keys are unique across sections, so a key may also appear before any section
// header. A key placed under a section it does not belong to is an error, as are
// unknown keys, unknown sections, repeated keys and malformed values. Strings
// may be bare or double-quoted.

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "govsim/csv.hpp"
#include "govsim/finite.hpp"
#include "govsim/params.hpp"
#include "govsim/replicator.hpp"

namespace govsim {

struct RunConfig {
  ModelVariant variant = ModelVariant::Baseline;
  ModelParams params;
  ReplicatorSettings replicator;
  FinitePopulationConfig finite;
  IndexConvention convention = IndexConvention::TargetMutant;
  std::optional<std::filesystem::path> output_dir;  // unset: --out, then GOVSIM_OUT, then "."
  bool emit_svg = false;

  // Keys that were not present in the parsed text, in declaration order.
  std::vector<std::string> defaulted;

  bool same_settings(const RunConfig& o) const {
    return variant == o.variant && params == o.params && replicator == o.replicator &&
           finite == o.finite && convention == o.convention && output_dir == o.output_dir &&
           emit_svg == o.emit_svg;
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return std::string(s.substr(1, s.size() - 2));
  return std::string(s);
}

inline double config_number(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

inline std::size_t config_count(std::string_view key, std::string_view text) {
  std::size_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(std::string(key) + ": expected a non-negative integer, got '" +
                      std::string(text) + "'");
  }
  return v;
}

inline bool config_bool(std::string_view key, std::string_view text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError(std::string(key) + ": expected true or false, got '" + std::string(text) + "'");
}

inline MixtureState config_triple(std::string_view key, std::string_view text) {
  std::array<double, 3> c{};
  std::size_t n = 0;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    if (n == 3) throw ConfigError(std::string(key) + ": expected three comma-separated values");
    c[n++] = config_number(key, trim(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (n != 3) throw ConfigError(std::string(key) + ": expected three comma-separated values");
  return {c[0], c[1], c[2]};
}

inline std::string_view to_string(IndexConvention c) {
  return c == IndexConvention::TargetMutant ? "target_mutant" : "transposed";
}

struct ConfigKey {
  std::string_view key;
  std::string_view section;
  std::string_view accepted;  // shown in --help and in error messages
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> dump;
};

inline std::string quoted(const std::string& s) { return '"' + s + '"'; }

inline const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> k;
    k.push_back({"variant", "model", "baseline | regulator_reward | conditional_trust",
                 [](RunConfig& c, std::string_view v) {
                   auto parsed = parse_variant(unquote(v));
                   if (!parsed) {
                     throw ConfigError("variant: unknown model variant '" + unquote(v) +
                                       "' (accepted: baseline, regulator_reward, conditional_trust)");
                   }
                   c.variant = *parsed;
                 },
                 [](const RunConfig& c) { return std::string(govsim::to_string(c.variant)); }});
    for (const auto& f : kParamFields) {
      std::string_view accepted = "finite real";
      if (f.key == "epsilon") accepted = "-1e6 < epsilon <= 1";
      if (f.key == "c_p" || f.key == "c_r" || f.key == "u" || f.key == "v" || f.key == "b_fo") {
        accepted = ">= 0";
      }
      auto member = f.member;
      auto key = f.key;
      k.push_back({f.key, "model", accepted,
                   [member, key](RunConfig& c, std::string_view v) { c.params.*member = config_number(key, v); },
                   [member](const RunConfig& c) { return format_short(c.params.*member); }});
    }
    k.push_back({"initial", "replicator", "x, y, z each in [0, 1]",
                 [](RunConfig& c, std::string_view v) { c.replicator.initial = config_triple("initial", v); },
                 [](const RunConfig& c) {
                   const auto& s = c.replicator.initial;
                   return format_short(s.x) + ", " + format_short(s.y) + ", " + format_short(s.z);
                 }});
    k.push_back({"dt", "replicator", "0 < dt <= 0.1",
                 [](RunConfig& c, std::string_view v) { c.replicator.dt = config_number("dt", v); },
                 [](const RunConfig& c) { return format_short(c.replicator.dt); }});
    k.push_back({"t_end", "replicator", "> 0",
                 [](RunConfig& c, std::string_view v) { c.replicator.t_end = config_number("t_end", v); },
                 [](const RunConfig& c) { return format_short(c.replicator.t_end); }});
    k.push_back({"thin", "replicator", "integer >= 1",
                 [](RunConfig& c, std::string_view v) { c.replicator.thin = config_count("thin", v); },
                 [](const RunConfig& c) { return std::to_string(c.replicator.thin); }});
    k.push_back({"n_u", "finite", "integer >= 2",
                 [](RunConfig& c, std::string_view v) { c.finite.n_user = config_count("n_u", v); },
                 [](const RunConfig& c) { return std::to_string(c.finite.n_user); }});
    k.push_back({"n_c", "finite", "integer >= 2",
                 [](RunConfig& c, std::string_view v) { c.finite.n_creator = config_count("n_c", v); },
                 [](const RunConfig& c) { return std::to_string(c.finite.n_creator); }});
    k.push_back({"n_r", "finite", "integer >= 2",
                 [](RunConfig& c, std::string_view v) { c.finite.n_regulator = config_count("n_r", v); },
                 [](const RunConfig& c) { return std::to_string(c.finite.n_regulator); }});
    k.push_back({"beta", "finite", "finite, >= 0",
                 [](RunConfig& c, std::string_view v) { c.finite.beta = config_number("beta", v); },
                 [](const RunConfig& c) { return format_short(c.finite.beta); }});
    k.push_back({"convention", "finite", "target_mutant | transposed",
                 [](RunConfig& c, std::string_view v) {
                   const auto s = unquote(v);
                   if (s == "target_mutant") c.convention = IndexConvention::TargetMutant;
                   else if (s == "transposed") c.convention = IndexConvention::Transposed;
                   else throw ConfigError("convention: expected target_mutant or transposed, got '" + s + "'");
                 },
                 [](const RunConfig& c) { return std::string(to_string(c.convention)); }});
    k.push_back({"dir", "output", "path",
                 [](RunConfig& c, std::string_view v) { c.output_dir = std::filesystem::path(unquote(v)); },
                 [](const RunConfig& c) { return quoted(c.output_dir ? c.output_dir->string() : "."); }});
    k.push_back({"svg", "output", "true | false",
                 [](RunConfig& c, std::string_view v) { c.emit_svg = config_bool("svg", v); },
                 [](const RunConfig& c) { return std::string(c.emit_svg ? "true" : "false"); }});
    return k;
  }();
  return keys;
}

inline const ConfigKey* find_config_key(std::string_view key) {
  for (const auto& k : config_keys()) {
    if (k.key == key) return &k;
  }
  return nullptr;
}

inline constexpr std::array<std::string_view, 4> kSections{"model", "replicator", "finite", "output"};

}  // namespace detail

// Domain checks for every parsed field; failures name the key and its accepted range.
inline void validate(const RunConfig& c) {
  try {
    validate(c.params);
    validate(c.finite);
  } catch (const ParameterError& e) {
    throw ConfigError(e.field() + ": " + e.what());
  }
  const auto& r = c.replicator;
  for (double v : {r.initial.x, r.initial.y, r.initial.z}) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("initial: components must lie in [0, 1]");
  }
  if (!(r.dt > 0.0 && r.dt <= kMaxStep)) throw ConfigError("dt: must satisfy 0 < dt <= 0.1");
  if (!(r.t_end > 0.0) || !std::isfinite(r.t_end)) throw ConfigError("t_end: must be > 0 and finite");
  if (r.thin < 1) throw ConfigError("thin: must be >= 1");
}

// Applies a single `key = value` assignment (used for command-line overrides).
inline void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  const auto* k = detail::find_config_key(key);
  if (!k) throw ConfigError("unknown key '" + std::string(key) + "'");
  k->set(config, detail::trim(value));
  std::erase(config.defaulted, std::string(key));
}

inline RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::set<std::string, std::less<>> seen;
  std::string section;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "malformed section header");
      section = std::string(detail::trim(line.substr(1, line.size() - 2)));
      if (std::find(detail::kSections.begin(), detail::kSections.end(), section) == detail::kSections.end()) {
        throw ConfigError(where + "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const auto key = detail::trim(line.substr(0, eq));
    const auto value = detail::trim(line.substr(eq + 1));
    const auto* k = detail::find_config_key(key);
    if (!k) throw ConfigError(where + "unknown key '" + std::string(key) + "'");
    if (!section.empty() && k->section != section) {
      throw ConfigError(where + "key '" + std::string(key) + "' belongs in [" +
                        std::string(k->section) + "], not [" + section + "]");
    }
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError(where + "repeated key '" + std::string(key) + "'");
    }
    if (value.empty()) throw ConfigError(where + std::string(key) + ": missing value");
    k->set(config, value);
  }
  for (const auto& k : detail::config_keys()) {
    if (!seen.count(k.key)) config.defaulted.emplace_back(k.key);
  }
  validate(config);
  return config;
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

// Full configuration in the same syntax; parse_config(dump_config(c)) reproduces c.
inline std::string dump_config(const RunConfig& config) {
  std::string out;
  for (auto section : detail::kSections) {
    if (!out.empty()) out += '\n';
    out += '[' + std::string(section) + "]\n";
    for (const auto& k : detail::config_keys()) {
      if (k.section != section) continue;
      if (k.key == "dir" && !config.output_dir) continue;
      out += std::string(k.key) + " = " + k.dump(config) + '\n';
    }
  }
  return out;
}

// One line per key: "key = value" plus "(default)" where the text omitted it.
inline std::string provenance_echo(const RunConfig& config) {
  std::string out;
  for (const auto& k : detail::config_keys()) {
    if (k.key == "dir" && !config.output_dir) continue;
    const bool defaulted =
        std::find(config.defaulted.begin(), config.defaulted.end(), k.key) != config.defaulted.end();
    out += std::string(k.key) + " = " + k.dump(config) + (defaulted ? "  (default)\n" : "\n");
  }
  return out;
}

}  // namespace govsim
