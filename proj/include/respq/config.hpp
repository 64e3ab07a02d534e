// Copyright 2026 The respq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace respq {

/// A fully validated run description parsed from a flat key=value file.
/// Paths are resolved relative to the directory of the config file.
struct RunConfig {
  std::map<std::string, std::string> raw;  // exact file content, echoed into outputs

  // Operators.
  std::string hamiltonian;                  // Pauli-sum file
  std::vector<std::string> perturbations;   // 1..3 Pauli-sum files (axes)
  std::string projector;                    // "", "parity+", "parity-", "number:<k>", or a file
  std::string ground_projector;             // same grammar; mitigates ground-state estimators

  // Response ansatz.
  std::string ansatz = "hardware_efficient";
  int layers = 1;
  int basis_a = 0;
  int basis_b = 1;
  double span_theta0 = 0.9250;
  double span_phi0 = 2.1130;

  // Ground-state preparation.
  std::string ground = "hf";  // "hf" or "vqe"
  std::vector<int> occupied;
  std::string ground_ansatz = "hardware_efficient";
  int ground_layers = 1;
  std::string e0 = "auto";  // "auto", "oracle", or a number

  // Frequency grid and broadening.
  double omega_min = 0.0;
  double omega_max = 0.0;
  int omega_steps = 0;
  double gamma = 0.0;

  // Execution mode.
  long shots = 0;
  std::string noise = "none";  // "none", "2q", "4q", "custom"
  double noise_p1 = 0.0;
  double noise_p2 = 0.0;
  double readout_flip = 0.0;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = decided by the caller (CLI flag, env var, or 1)

  // Optimizer.
  std::string optimizer = "auto";  // "auto", "grid", "simplex"
  int grid_resolution = 256;
  long max_iters = 0;  // 0 = optimizer default
  double tol = 1e-8;

  // Post-processing and output.
  double shift_ev = 0.0;
  std::string output;
  std::string format = "csv";
  bool oracle = false;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

struct ConfigReader {
  const std::map<std::string, std::string>& kv;
  std::vector<std::string>& violations;

  bool has(const std::string& key) const { return kv.count(key) != 0; }

  std::string str(const std::string& key, const std::string& fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  }

  double num(const std::string& key, double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
      std::size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      violations.push_back(key + " must be a number (got '" + it->second + "')");
      return fallback;
    }
  }

  long integer(const std::string& key, long fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
      std::size_t pos = 0;
      const long v = std::stol(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      violations.push_back(key + " must be an integer (got '" + it->second + "')");
      return fallback;
    }
  }

  bool flag(const std::string& key, bool fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    violations.push_back(key + " must be true/false (got '" + v + "')");
    return fallback;
  }
};

inline const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys = {
      "hamiltonian", "perturbation", "projector", "ground_projector",
      "ansatz", "layers", "basis_a", "basis_b", "span_theta0", "span_phi0",
      "ground", "occupied", "ground_ansatz", "ground_layers", "e0",
      "omega_min", "omega_max", "omega_steps", "gamma",
      "shots", "noise", "noise_p1", "noise_p2", "readout_flip",
      "seed", "threads",
      "optimizer", "grid_resolution", "max_iters", "tol",
      "shift_ev", "output", "format", "oracle"};
  return keys;
}

}  // namespace detail

/// Parses config text.  `origin` names the source in error messages;
/// `base_dir` anchors relative paths.  All violations are collected and
/// reported together in a single exception.
inline RunConfig parse_config_text(const std::string& text, const std::string& origin,
                                   const std::string& base_dir = ".") {
  std::map<std::string, std::string> kv;
  std::vector<std::string> violations;

  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      violations.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) {
      violations.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    if (!detail::known_config_keys().count(key)) {
      violations.push_back("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      continue;
    }
    if (kv.count(key))
      violations.push_back("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = value;
  }

  RunConfig c;
  c.raw = kv;
  detail::ConfigReader r{kv, violations};

  auto resolve = [&base_dir](const std::string& p) {
    std::filesystem::path fp(p);
    if (fp.is_absolute()) return fp.lexically_normal().string();
    return (std::filesystem::path(base_dir) / fp).lexically_normal().string();
  };

  if (!r.has("hamiltonian"))
    violations.push_back("hamiltonian is required (path to a Pauli-sum file)");
  else
    c.hamiltonian = resolve(r.str("hamiltonian", ""));

  if (!r.has("perturbation")) {
    violations.push_back("perturbation is required (1 to 3 comma-separated Pauli-sum files)");
  } else {
    for (const std::string& p : detail::split_list(r.str("perturbation", "")))
      c.perturbations.push_back(resolve(p));
    if (c.perturbations.empty() || c.perturbations.size() > 3)
      violations.push_back("perturbation must list between 1 and 3 files");
  }

  auto read_projector = [&r, &resolve](const std::string& key) {
    std::string p = r.str(key, "");
    if (p == "none") p.clear();
    if (!p.empty() && p != "parity+" && p != "parity-" && p.rfind("number:", 0) != 0)
      p = resolve(p);
    return p;
  };
  c.projector = read_projector("projector");
  c.ground_projector = read_projector("ground_projector");

  c.ansatz = r.str("ansatz", c.ansatz);
  if (c.ansatz != "hardware_efficient" && c.ansatz != "singlet_pair" &&
      c.ansatz != "two_angle" && c.ansatz != "oracle_span")
    violations.push_back(
        "ansatz must be one of hardware_efficient, singlet_pair, two_angle, oracle_span");
  c.layers = static_cast<int>(r.integer("layers", c.layers));
  if (c.layers < 1) violations.push_back("layers must be at least 1");
  c.basis_a = static_cast<int>(r.integer("basis_a", c.basis_a));
  c.basis_b = static_cast<int>(r.integer("basis_b", c.basis_b));
  if (c.ansatz == "two_angle" && c.basis_a == c.basis_b)
    violations.push_back("basis_a and basis_b must differ for the two_angle ansatz");
  c.span_theta0 = r.num("span_theta0", c.span_theta0);
  c.span_phi0 = r.num("span_phi0", c.span_phi0);

  c.ground = r.str("ground", c.ground);
  if (c.ground != "hf" && c.ground != "vqe")
    violations.push_back("ground must be hf or vqe");
  if (r.has("occupied")) {
    for (const std::string& q : detail::split_list(r.str("occupied", ""))) {
      try {
        std::size_t pos = 0;
        const int v = std::stoi(q, &pos);
        if (pos != q.size()) throw std::invalid_argument("trailing characters");
        c.occupied.push_back(v);
      } catch (const std::exception&) {
        violations.push_back("occupied entries must be integers (got '" + q + "')");
      }
    }
  }
  c.ground_ansatz = r.str("ground_ansatz", c.ground_ansatz);
  if (c.ground_ansatz != "hardware_efficient" && c.ground_ansatz != "singlet_pair")
    violations.push_back("ground_ansatz must be hardware_efficient or singlet_pair");
  c.ground_layers = static_cast<int>(r.integer("ground_layers", c.ground_layers));
  if (c.ground_layers < 1) violations.push_back("ground_layers must be at least 1");
  c.e0 = r.str("e0", c.e0);
  if (c.e0 != "auto" && c.e0 != "oracle") {
    try {
      std::size_t pos = 0;
      (void)std::stod(c.e0, &pos);
      if (pos != c.e0.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      violations.push_back("e0 must be auto, oracle, or a number");
    }
  }

  if (!r.has("omega_min")) violations.push_back("omega_min is required");
  if (!r.has("omega_max")) violations.push_back("omega_max is required");
  if (!r.has("omega_steps")) violations.push_back("omega_steps is required");
  c.omega_min = r.num("omega_min", 0.0);
  c.omega_max = r.num("omega_max", 0.0);
  c.omega_steps = static_cast<int>(r.integer("omega_steps", 0));
  if (r.has("omega_min") && r.has("omega_max") && !(c.omega_min < c.omega_max))
    violations.push_back("omega_min must be below omega_max");
  if (r.has("omega_steps") && c.omega_steps < 1)
    violations.push_back("omega_steps must be at least 1");

  if (!r.has("gamma")) violations.push_back("gamma is required");
  c.gamma = r.num("gamma", 0.0);
  if (r.has("gamma") && !(c.gamma > 0.0)) violations.push_back("gamma must be positive");

  c.shots = r.integer("shots", c.shots);
  if (c.shots < 0) violations.push_back("shots must be non-negative");
  c.noise = r.str("noise", c.noise);
  if (c.noise != "none" && c.noise != "2q" && c.noise != "4q" && c.noise != "custom")
    violations.push_back("noise must be one of none, 2q, 4q, custom");
  c.noise_p1 = r.num("noise_p1", c.noise_p1);
  c.noise_p2 = r.num("noise_p2", c.noise_p2);
  if (c.noise_p1 < 0.0 || c.noise_p1 > 1.0) violations.push_back("noise_p1 must be in [0, 1]");
  if (c.noise_p2 < 0.0 || c.noise_p2 > 1.0) violations.push_back("noise_p2 must be in [0, 1]");
  c.readout_flip = r.num("readout_flip", c.readout_flip);
  if (c.readout_flip < 0.0 || c.readout_flip > 0.5)
    violations.push_back("readout_flip must be in [0, 0.5]");
  const long seed_raw = r.integer("seed", 0);
  c.seed = static_cast<std::uint64_t>(seed_raw);
  c.threads = static_cast<int>(r.integer("threads", c.threads));
  if (c.threads < 0) violations.push_back("threads must be non-negative");

  c.optimizer = r.str("optimizer", c.optimizer);
  if (c.optimizer != "auto" && c.optimizer != "grid" && c.optimizer != "simplex")
    violations.push_back("optimizer must be one of auto, grid, simplex");
  c.grid_resolution = static_cast<int>(r.integer("grid_resolution", c.grid_resolution));
  if (c.grid_resolution < 8) violations.push_back("grid_resolution must be at least 8");
  c.max_iters = r.integer("max_iters", c.max_iters);
  if (c.max_iters < 0) violations.push_back("max_iters must be non-negative");
  c.tol = r.num("tol", c.tol);
  if (!(c.tol > 0.0)) violations.push_back("tol must be positive");

  c.shift_ev = r.num("shift_ev", c.shift_ev);
  c.output = r.str("output", "");
  if (!c.output.empty()) c.output = resolve(c.output);
  c.format = r.str("format", c.format);
  if (c.format != "csv" && c.format != "json")
    violations.push_back("format must be csv or json");
  c.oracle = r.flag("oracle", c.oracle);

  if (!violations.empty()) {
    std::string msg = "invalid config " + origin + ":";
    for (const std::string& v : violations) msg += "\n  - " + v;
    throw std::runtime_error(msg);
  }
  return c;
}

inline RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string dir = std::filesystem::path(path).parent_path().string();
  return parse_config_text(buf.str(), path, dir.empty() ? "." : dir);
}

/// The frequency grid described by the config: omega_steps points spaced
/// evenly over [omega_min, omega_max] inclusive (a single point sits at
/// omega_min).
inline std::vector<double> config_grid(const RunConfig& c) {
  std::vector<double> grid;
  grid.reserve(c.omega_steps);
  if (c.omega_steps == 1) {
    grid.push_back(c.omega_min);
    return grid;
  }
  for (int i = 0; i < c.omega_steps; ++i)
    grid.push_back(c.omega_min +
                   (c.omega_max - c.omega_min) * i / static_cast<double>(c.omega_steps - 1));
  return grid;
}

}  // namespace respq
