#include "mhd/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mhd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, x);
  if (v.empty() || r.ec != std::errc() || r.ptr != end || !std::isfinite(x)) {
    throw ConfigError("invalid number for '" + key + "': '" + v + "'");
  }
  return x;
}

long parse_int(const std::string& key, const std::string& v) {
  long x = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, x);
  if (v.empty() || r.ec != std::errc() || r.ptr != end) {
    throw ConfigError("invalid integer for '" + key + "': '" + v + "'");
  }
  return x;
}

std::size_t parse_positive(const std::string& key, const std::string& v) {
  const long x = parse_int(key, v);
  if (x < 1) throw ConfigError("'" + key + "' must be positive");
  return static_cast<std::size_t>(x);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::Conserve: return "conserve";
    case Experiment::Converge: return "converge";
    case Experiment::Compare: return "compare";
    case Experiment::Solve: return "solve";
  }
  return "";
}

Experiment experiment_from_string(const std::string& name) {
  if (name == "conserve") return Experiment::Conserve;
  if (name == "converge") return Experiment::Converge;
  if (name == "compare") return Experiment::Compare;
  if (name == "solve") return Experiment::Solve;
  throw ConfigError("unknown experiment '" + name + "'");
}

int RunConfig::num_steps() const { return static_cast<int>(std::lround(sim.t_end / sim.dt)); }

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {"n",          "dt",         "t_end",      "re_inv",
                                                "rm_inv",     "coupling",   "picard_tol", "picard_max",
                                                "krylov_tol", "scheme",     "output_dir", "dump_every",
                                                "meshes"};
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  auto& s = cfg.sim;
  if (key == "n") {
    s.n = parse_positive(key, v);
  } else if (key == "dt") {
    s.dt = parse_double(key, v);
  } else if (key == "t_end") {
    s.t_end = parse_double(key, v);
  } else if (key == "re_inv") {
    s.re_inv = parse_double(key, v);
  } else if (key == "rm_inv") {
    s.rm_inv = parse_double(key, v);
  } else if (key == "coupling") {
    s.coupling = parse_double(key, v);
  } else if (key == "picard_tol") {
    s.picard_tol = parse_double(key, v);
  } else if (key == "picard_max") {
    s.picard_max = static_cast<int>(parse_positive(key, v));
  } else if (key == "krylov_tol") {
    s.krylov_tol = parse_double(key, v);
  } else if (key == "scheme") {
    try {
      s.scheme = scheme_from_string(v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "output_dir") {
    if (v.empty()) throw ConfigError("output_dir must not be empty");
    cfg.output_dir = v;
  } else if (key == "dump_every") {
    const long d = parse_int(key, v);
    if (d < 0) throw ConfigError("dump_every must be non-negative");
    cfg.dump_every = static_cast<int>(d);
  } else if (key == "meshes") {
    std::vector<std::size_t> m;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) m.push_back(parse_positive(key, trim(item)));
    if (m.empty()) throw ConfigError("meshes must list at least one mesh");
    cfg.meshes = m;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    try {
      apply_setting(cfg, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

RunConfig load_config(Experiment experiment, const std::string& path,
                      const std::vector<std::pair<std::string, std::string>>& overrides) {
  RunConfig cfg;
  cfg.experiment = experiment;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str());
  for (const auto& [k, v] : overrides) apply_setting(cfg, k, v);
  validate(cfg);
  return cfg;
}

std::string config_to_text(const RunConfig& cfg) {
  const auto& s = cfg.sim;
  std::string meshes;
  for (std::size_t i = 0; i < cfg.meshes.size(); ++i) meshes += (i ? "," : "") + std::to_string(cfg.meshes[i]);
  std::ostringstream out;
  out << "# experiment: " << to_string(cfg.experiment) << "\n";
  out << "n = " << s.n << "\n";
  out << "dt = " << fmt(s.dt) << "\n";
  out << "t_end = " << fmt(s.t_end) << "\n";
  out << "re_inv = " << fmt(s.re_inv) << "\n";
  out << "rm_inv = " << fmt(s.rm_inv) << "\n";
  out << "coupling = " << fmt(s.coupling) << "\n";
  out << "picard_tol = " << fmt(s.picard_tol) << "\n";
  out << "picard_max = " << s.picard_max << "\n";
  out << "krylov_tol = " << fmt(s.krylov_tol) << "\n";
  out << "scheme = " << to_string(s.scheme) << "\n";
  out << "output_dir = " << cfg.output_dir << "\n";
  out << "dump_every = " << cfg.dump_every << "\n";
  out << "meshes = " << meshes << "\n";
  return out.str();
}

void validate(const RunConfig& cfg) {
  try {
    cfg.sim.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const double steps = cfg.sim.t_end / cfg.sim.dt;
  if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
    throw ConfigError("t_end must be an integer multiple of dt");
  }
  if (cfg.meshes.empty()) throw ConfigError("meshes must list at least one mesh");
}

}  // namespace mhd
