#pragma once

// CSV writers. Numbers are written with 17 significant digits through
// std::to_chars, which ignores the global locale and round-trips exactly.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "govsim/equilibria.hpp"
#include "govsim/finite.hpp"
#include "govsim/params.hpp"
#include "govsim/payoffs.hpp"
#include "govsim/replicator.hpp"

namespace govsim {

inline std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

// Shortest representation that round-trips; used in file names and manifests.
inline std::string format_short(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

inline void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write to " + path.string() + " failed");
}

inline std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out = "t,x,y,z\n";
  out.reserve(trajectory.samples.size() * 80);
  for (const auto& s : trajectory.samples) {
    out += format_double(s.t);
    for (double c : {s.state.x, s.state.y, s.state.z}) {
      out += ',';
      out += format_double(c);
    }
    out += '\n';
  }
  return out;
}

inline std::string equilibria_csv(const std::vector<EquilibriumReport>& reports) {
  std::string out = "x,y,z,kind,re_eig1,im_eig1,re_eig2,im_eig2,re_eig3,im_eig3,verdict\n";
  for (const auto& r : reports) {
    out += format_double(r.point.x) + ',' + format_double(r.point.y) + ',' +
           format_double(r.point.z) + ',' + std::string(to_string(r.kind));
    for (const auto& ev : r.eigenvalues) {
      out += ',' + format_double(ev.real()) + ',' + format_double(ev.imag());
    }
    out += ',' + std::string(to_string(r.verdict)) + '\n';
  }
  return out;
}

inline std::string payoff_table_csv(ModelVariant variant, const ModelParams& params) {
  const auto table = payoff_table(variant, params);
  std::string out = "state,user_payoff,creator_payoff,regulator_payoff\n";
  for (auto i : kTableOrder) {
    const auto& p = table[i];
    out += label(variant, StrategyProfile::from_index(i)) + ',' + format_double(p.user) + ',' +
           format_double(p.creator) + ',' + format_double(p.regulator) + '\n';
  }
  return out;
}

inline std::string stationary_csv(ModelVariant variant, const StationaryDistribution& dist) {
  std::string out = "state,probability\n";
  for (auto i : kTableOrder) {
    out += label(variant, StrategyProfile::from_index(i)) + ',' +
           format_double(dist.probabilities[i]) + '\n';
  }
  return out;
}

inline std::string transition_graph_csv(ModelVariant variant, const std::vector<DominanceEdge>& edges) {
  std::string out = "from,to,prob_forward,prob_backward,classification\n";
  for (const auto& e : edges) {
    out += label(variant, e.from) + ',' + label(variant, e.to) + ',' + format_double(e.forward) +
           ',' + format_double(e.backward) + ',' + std::string(to_string(e.classification)) + '\n';
  }
  return out;
}

// Splits one CSV line on commas (no quoting is ever emitted by these writers).
inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace govsim
