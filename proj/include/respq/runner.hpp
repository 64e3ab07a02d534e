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

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "respq/config.hpp"
#include "respq/oracle.hpp"
#include "respq/solver.hpp"
#include "respq/spectrum.hpp"
#include "respq/version.hpp"

namespace respq {

using ordered_json = nlohmann::ordered_json;

/// Locale-independent decimal formatting with 17 significant digits, enough
/// to round-trip any double exactly.
inline std::string format_sig17(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// FNV-1a hash over the sorted key=value pairs of the config echo, printed
/// as 16 hex digits.  CLI overrides (seed, threads, output) do not enter the
/// hash, so reruns of one config file are recognizably the same run.
inline std::string config_hash(const std::map<std::string, std::string>& raw) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [k, v] : raw) {
    mix(k);
    mix("=");
    mix(v);
    mix("\n");
  }
  char buf[17] = {};
  const auto res = std::to_chars(buf, buf + 16, h, 16);
  std::string hex(buf, res.ptr);
  return std::string(16 - hex.size(), '0') + hex;
}

struct PointRecord {
  double omega = 0.0;  // output frequency (after any spectral shift)
  double re_chi = 0.0;
  double im_chi = 0.0;
  double residual = 0.0;   // worst optimized cost across axes
  double sigma_abs = 0.0;  // absorption cross-section from the averaged Im chi
  bool near_resonance = false;
  bool degenerate = false;
  bool failed = false;
  std::string error;
  std::vector<Bindings> theta;  // optimized angles, one table per axis
  std::optional<double> oracle_re, oracle_im;
};

struct RunRecord {
  std::string version;
  std::map<std::string, std::string> config;
  std::string config_hash;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string ground_mode;  // "hf", "vqe", or "oracle"
  double e0 = 0.0;
  double gamma = 0.0;
  double shift_ev = 0.0;
  int axes = 1;
  bool averaged = false;  // true when several perturbation axes were combined
  std::vector<PointRecord> points;
  std::optional<double> oracle_max_dev;  // max |chi - chi_oracle| over clean rows
  std::vector<std::string> failures;     // "omega=<w> axis=<a>: message"
  double wall_seconds = 0.0;

  bool success() const { return failures.empty(); }
};

inline std::optional<NoiseModel> make_noise(const RunConfig& c, int n) {
  if (c.noise == "none" && c.readout_flip == 0.0) return std::nullopt;
  NoiseModel m;
  if (c.noise == "2q" || c.noise == "4q")
    m = NoiseModel::preset(c.noise);
  else if (c.noise == "custom") {
    m.p1 = c.noise_p1;
    m.p2 = c.noise_p2;
  }
  if (c.readout_flip > 0.0) m.readout_flip.assign(n, c.readout_flip);
  return m;
}

/// Builds a projector from its config spelling: a preset ("parity+",
/// "parity-", "number:<k>") or a Pauli-sum file path.  Validates Hermitian
/// idempotency before returning.
inline std::optional<PauliSum> make_projector(const std::string& spec, int n) {
  if (spec.empty()) return std::nullopt;
  PauliSum p(n);
  if (spec == "parity+")
    p = parity_projector(n, +1);
  else if (spec == "parity-")
    p = parity_projector(n, -1);
  else if (spec.rfind("number:", 0) == 0)
    p = number_projector(n, std::stoi(spec.substr(7)));
  else
    p = read_pauli_file(spec);
  if (p.n() != n)
    throw std::runtime_error("projector acts on " + std::to_string(p.n()) +
                             " qubits but the Hamiltonian has " + std::to_string(n));
  validate_projector(p);
  return p;
}

inline OptimizerSpec make_optimizer(const RunConfig& c, int dim) {
  OptimizerSpec o;
  if (c.optimizer == "grid")
    o = OptimizerSpec::grid(c.grid_resolution);
  else if (c.optimizer == "simplex")
    o = OptimizerSpec::simplex(c.max_iters > 0 ? c.max_iters : 400 * std::max(dim, 1), c.tol);
  else {
    o = default_optimizer(dim);
    if (o.kind == OptimizerSpec::Kind::GridScan)
      o.resolution = c.grid_resolution;
    else {
      if (c.max_iters > 0) o.max_iters = c.max_iters;
      o.tol = c.tol;
    }
  }
  o.seed = derive_seed(c.seed, 0xb7);
  return o;
}

inline AnsatzSpec make_response_spec(const RunConfig& c, int n) {
  AnsatzSpec s;
  s.n = n;
  s.layers = c.layers;
  s.basis_a = c.basis_a;
  s.basis_b = c.basis_b;
  s.span_theta0 = c.span_theta0;
  s.span_phi0 = c.span_phi0;
  if (c.ansatz == "hardware_efficient")
    s.kind = AnsatzKind::HardwareEfficient;
  else if (c.ansatz == "singlet_pair")
    s.kind = AnsatzKind::SingletPair;
  else if (c.ansatz == "two_angle")
    s.kind = AnsatzKind::TwoAngleCO;
  else if (c.ansatz == "oracle_span")
    s.kind = AnsatzKind::OracleSpan;
  else
    throw std::runtime_error("unknown ansatz name: " + c.ansatz);
  return s;
}

struct GroundPrep {
  Circuit circuit;
  Bindings bindings;
  double e0 = 0.0;
  std::string mode;
  double energy = 0.0;  // variational energy when mode == "vqe"
};

inline GroundPrep prepare_ground(const RunConfig& c, const PauliSum& h0,
                                 const ExecConfig& exec) {
  const int n = h0.n();
  GroundPrep g{Circuit(n), {}, 0.0, c.ground, 0.0};
  if (c.ground == "hf") {
    g.circuit = hf_reference(n, c.occupied);
  } else {
    AnsatzSpec spec;
    spec.kind = c.ground_ansatz == "singlet_pair" ? AnsatzKind::SingletPair
                                                  : AnsatzKind::HardwareEfficient;
    spec.n = n;
    spec.layers = c.ground_layers;
    Circuit ansatz = build_ansatz(spec);
    const int dim = static_cast<int>(ansatz.parameters().size());
    // VQE prepares ground-sector states, so the ground projector is the one
    // that mitigates its energy estimator.
    ExecConfig ex = exec;
    ex.projector = exec.ground_projector;
    ex.ground_projector.reset();
    ex.seed = derive_seed(exec.seed, 0x6e0d);
    const VqeResult r = vqe_minimize(h0, ansatz, make_optimizer(c, dim), ex);
    g.circuit = ansatz;
    g.bindings = r.theta;
    g.energy = r.energy;
  }
  if (c.e0 == "oracle") {
    g.e0 = exact_diag(h0).energies(0);
  } else if (c.e0 == "auto") {
    const Statevector psi = run_circuit(freeze(g.circuit, g.bindings));
    g.e0 = std::real(expect(psi, h0));
  } else {
    g.e0 = std::stod(c.e0);
  }
  return g;
}

/// Executes a full configured computation: operator ingestion, ground-state
/// preparation, the per-axis frequency sweep, orientation averaging, and
/// spectrum post-processing.  Per-point failures are collected, not fatal.
inline RunRecord run(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.version = kVersion;
  rec.config = cfg.raw;
  rec.config_hash = config_hash(cfg.raw);
  rec.seed = cfg.seed;
  rec.threads = cfg.threads > 0 ? cfg.threads : 1;
  rec.gamma = cfg.gamma;
  rec.shift_ev = cfg.shift_ev;

  const PauliSum h0 = read_pauli_file(cfg.hamiltonian);
  const int n = h0.n();
  std::vector<PauliSum> vs;
  for (const std::string& path : cfg.perturbations) {
    PauliSum v = read_pauli_file(path);
    if (v.n() != n)
      throw std::runtime_error("perturbation '" + path + "' acts on " + std::to_string(v.n()) +
                               " qubits but the Hamiltonian has " + std::to_string(n));
    vs.push_back(std::move(v));
  }
  rec.axes = static_cast<int>(vs.size());
  rec.averaged = vs.size() > 1;

  ExecConfig exec;
  exec.shots = cfg.shots;
  exec.noise = make_noise(cfg, n);
  exec.projector = make_projector(cfg.projector, n);
  exec.ground_projector = make_projector(cfg.ground_projector, n);
  exec.seed = cfg.seed;
  exec.threads = rec.threads;

  const GroundPrep ground = prepare_ground(cfg, h0, exec);
  rec.ground_mode = ground.mode;
  rec.e0 = ground.e0;

  const std::vector<double> grid = config_grid(cfg);
  const AnsatzSpec rspec = make_response_spec(cfg, n);
  int dim = 2;  // the anchored span family always has two angles
  if (rspec.kind != AnsatzKind::OracleSpan) {
    AnsatzSpec probe = rspec;
    probe.n = n;
    dim = static_cast<int>(build_ansatz(probe).parameters().size());
  }
  const OptimizerSpec opt = make_optimizer(cfg, dim);

  std::vector<std::vector<ResponsePoint>> per_axis;
  per_axis.reserve(vs.size());
  for (std::size_t a = 0; a < vs.size(); ++a) {
    ResponseProblem prob{h0,   vs[a],           ground.e0, ground.circuit,
                         ground.bindings, rspec, grid,      cfg.gamma};
    ExecConfig ax = exec;
    ax.seed = derive_seed(cfg.seed, 0xa715, a);
    per_axis.push_back(sweep(prob, opt, ax));
  }

  std::optional<EigenDecomposition> eig;
  std::vector<std::vector<cplx>> oracle_axis;
  if (cfg.oracle) {
    eig = exact_diag(h0);
    for (const PauliSum& v : vs) {
      std::vector<cplx> col;
      col.reserve(grid.size());
      for (double w : grid) col.push_back(chi_sos(*eig, v, w, cfg.gamma));
      oracle_axis.push_back(std::move(col));
    }
  }

  const std::vector<double> omega_out = apply_shift(grid, cfg.shift_ev);
  rec.points.resize(grid.size());
  double max_dev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    PointRecord& p = rec.points[i];
    p.omega = omega_out[i];
    cplx chi_acc(0.0, 0.0);
    for (std::size_t a = 0; a < vs.size(); ++a) {
      const ResponsePoint& rp = per_axis[a][i];
      chi_acc += rp.chi / static_cast<double>(vs.size());
      p.residual = std::max(p.residual, rp.residual);
      p.near_resonance = p.near_resonance || rp.near_resonance;
      p.degenerate = p.degenerate || rp.degenerate;
      p.theta.push_back(rp.theta);
      if (rp.failed) {
        p.failed = true;
        const std::string entry =
            "omega=" + format_sig17(grid[i]) + " axis=" + std::to_string(a) + ": " + rp.error;
        rec.failures.push_back(entry);
        p.error += (p.error.empty() ? "" : "; ") + entry;
      }
    }
    p.re_chi = std::real(chi_acc);
    p.im_chi = std::imag(chi_acc);
    p.sigma_abs = absorption_cross_section(p.omega, p.im_chi);
    if (cfg.oracle) {
      cplx oc(0.0, 0.0);
      for (std::size_t a = 0; a < vs.size(); ++a)
        oc += oracle_axis[a][i] / static_cast<double>(vs.size());
      p.oracle_re = std::real(oc);
      p.oracle_im = std::imag(oc);
      if (!p.failed) max_dev = std::max(max_dev, std::abs(chi_acc - oc));
    }
  }
  if (cfg.oracle) rec.oracle_max_dev = max_dev;

  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

/// Dense-oracle spectrum for the same config: sum-over-states response on
/// the exact ground state, no variational machinery.  The residual column is
/// identically zero.
inline RunRecord run_oracle(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.version = kVersion;
  rec.config = cfg.raw;
  rec.config_hash = config_hash(cfg.raw);
  rec.seed = cfg.seed;
  rec.threads = 1;
  rec.gamma = cfg.gamma;
  rec.shift_ev = cfg.shift_ev;
  rec.ground_mode = "oracle";

  const PauliSum h0 = read_pauli_file(cfg.hamiltonian);
  const int n = h0.n();
  std::vector<PauliSum> vs;
  for (const std::string& path : cfg.perturbations) {
    PauliSum v = read_pauli_file(path);
    if (v.n() != n)
      throw std::runtime_error("perturbation '" + path + "' acts on " + std::to_string(v.n()) +
                               " qubits but the Hamiltonian has " + std::to_string(n));
    vs.push_back(std::move(v));
  }
  rec.axes = static_cast<int>(vs.size());
  rec.averaged = vs.size() > 1;

  const EigenDecomposition eig = exact_diag(h0);
  rec.e0 = eig.energies(0);

  const std::vector<double> grid = config_grid(cfg);
  const std::vector<double> omega_out = apply_shift(grid, cfg.shift_ev);
  rec.points.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    PointRecord& p = rec.points[i];
    p.omega = omega_out[i];
    cplx chi_acc(0.0, 0.0);
    for (const PauliSum& v : vs)
      chi_acc += chi_sos(eig, v, grid[i], cfg.gamma) / static_cast<double>(vs.size());
    p.re_chi = std::real(chi_acc);
    p.im_chi = std::imag(chi_acc);
    p.sigma_abs = absorption_cross_section(p.omega, p.im_chi);
  }
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

inline void emit_csv(const RunRecord& rec, std::ostream& os) {
  os << "# respq " << rec.version << "\n";
  os << "# config_hash " << rec.config_hash << "\n";
  os << "# seed " << rec.seed << "\n";
  const bool oracle_cols = !rec.points.empty() && rec.points.front().oracle_re.has_value();
  if (rec.oracle_max_dev)
    os << "# oracle_max_dev " << format_sig17(*rec.oracle_max_dev) << "\n";
  os << "omega,re_chi,im_chi,residual,sigma_abs";
  if (oracle_cols) os << ",oracle_re_chi,oracle_im_chi";
  os << "\n";
  for (const PointRecord& p : rec.points) {
    os << format_sig17(p.omega) << ',' << format_sig17(p.re_chi) << ','
       << format_sig17(p.im_chi) << ',' << format_sig17(p.residual) << ','
       << format_sig17(p.sigma_abs);
    if (oracle_cols)
      os << ',' << format_sig17(p.oracle_re.value_or(0.0)) << ','
         << format_sig17(p.oracle_im.value_or(0.0));
    os << "\n";
  }
}

namespace detail {

inline ordered_json theta_to_json(const std::vector<Bindings>& theta) {
  ordered_json arr = ordered_json::array();
  for (const Bindings& b : theta) {
    ordered_json o = ordered_json::object();
    for (const auto& [k, v] : b) o[k] = v;
    arr.push_back(o);
  }
  return arr;
}

inline double json_num(const ordered_json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

}  // namespace detail

inline ordered_json record_to_json(const RunRecord& rec) {
  ordered_json j;
  j["version"] = rec.version;
  j["config"] = rec.config;
  j["config_hash"] = rec.config_hash;
  j["seed"] = rec.seed;
  j["threads"] = rec.threads;
  j["ground_mode"] = rec.ground_mode;
  j["e0"] = rec.e0;
  j["gamma"] = rec.gamma;
  j["shift_ev"] = rec.shift_ev;
  j["axes"] = rec.axes;
  j["averaged"] = rec.averaged;
  ordered_json pts = ordered_json::array();
  for (const PointRecord& p : rec.points) {
    ordered_json o;
    o["omega"] = p.omega;
    o["re_chi"] = p.re_chi;
    o["im_chi"] = p.im_chi;
    o["residual"] = p.residual;
    o["sigma_abs"] = p.sigma_abs;
    o["near_resonance"] = p.near_resonance;
    o["degenerate"] = p.degenerate;
    o["failed"] = p.failed;
    o["error"] = p.error;
    o["theta"] = detail::theta_to_json(p.theta);
    if (p.oracle_re) {
      o["oracle_re_chi"] = *p.oracle_re;
      o["oracle_im_chi"] = *p.oracle_im;
    }
    pts.push_back(std::move(o));
  }
  j["points"] = std::move(pts);
  if (rec.oracle_max_dev) j["oracle_max_dev"] = *rec.oracle_max_dev;
  j["failures"] = rec.failures;
  j["wall_seconds"] = rec.wall_seconds;
  return j;
}

inline RunRecord record_from_json(const ordered_json& j) {
  RunRecord rec;
  rec.version = j.at("version").get<std::string>();
  rec.config = j.at("config").get<std::map<std::string, std::string>>();
  rec.config_hash = j.at("config_hash").get<std::string>();
  rec.seed = j.at("seed").get<std::uint64_t>();
  rec.threads = j.at("threads").get<int>();
  rec.ground_mode = j.at("ground_mode").get<std::string>();
  rec.e0 = detail::json_num(j.at("e0"));
  rec.gamma = detail::json_num(j.at("gamma"));
  rec.shift_ev = detail::json_num(j.at("shift_ev"));
  rec.axes = j.at("axes").get<int>();
  rec.averaged = j.at("averaged").get<bool>();
  for (const auto& o : j.at("points")) {
    PointRecord p;
    p.omega = detail::json_num(o.at("omega"));
    p.re_chi = detail::json_num(o.at("re_chi"));
    p.im_chi = detail::json_num(o.at("im_chi"));
    p.residual = detail::json_num(o.at("residual"));
    p.sigma_abs = detail::json_num(o.at("sigma_abs"));
    p.near_resonance = o.at("near_resonance").get<bool>();
    p.degenerate = o.at("degenerate").get<bool>();
    p.failed = o.at("failed").get<bool>();
    p.error = o.at("error").get<std::string>();
    for (const auto& t : o.at("theta")) {
      Bindings b;
      for (auto it = t.begin(); it != t.end(); ++it) b[it.key()] = it.value().get<double>();
      p.theta.push_back(std::move(b));
    }
    if (o.contains("oracle_re_chi")) {
      p.oracle_re = detail::json_num(o.at("oracle_re_chi"));
      p.oracle_im = detail::json_num(o.at("oracle_im_chi"));
    }
    rec.points.push_back(std::move(p));
  }
  if (j.contains("oracle_max_dev")) rec.oracle_max_dev = detail::json_num(j.at("oracle_max_dev"));
  rec.failures = j.at("failures").get<std::vector<std::string>>();
  rec.wall_seconds = detail::json_num(j.at("wall_seconds"));
  return rec;
}

namespace detail {

inline bool num_eq(double a, double b) {
  return a == b || (std::isnan(a) && std::isnan(b));
}

inline bool opt_eq(const std::optional<double>& a, const std::optional<double>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || num_eq(*a, *b);
}

}  // namespace detail

/// Field-by-field equality with NaN treated as equal to NaN (failed points
/// carry NaN response values by design).
inline bool records_equal(const RunRecord& a, const RunRecord& b) {
  if (a.version != b.version || a.config != b.config || a.config_hash != b.config_hash ||
      a.seed != b.seed || a.threads != b.threads || a.ground_mode != b.ground_mode ||
      !detail::num_eq(a.e0, b.e0) || !detail::num_eq(a.gamma, b.gamma) ||
      !detail::num_eq(a.shift_ev, b.shift_ev) || a.axes != b.axes ||
      a.averaged != b.averaged || a.failures != b.failures ||
      !detail::opt_eq(a.oracle_max_dev, b.oracle_max_dev) ||
      !detail::num_eq(a.wall_seconds, b.wall_seconds) || a.points.size() != b.points.size())
    return false;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const PointRecord& p = a.points[i];
    const PointRecord& q = b.points[i];
    if (!detail::num_eq(p.omega, q.omega) || !detail::num_eq(p.re_chi, q.re_chi) ||
        !detail::num_eq(p.im_chi, q.im_chi) || !detail::num_eq(p.residual, q.residual) ||
        !detail::num_eq(p.sigma_abs, q.sigma_abs) || p.near_resonance != q.near_resonance ||
        p.degenerate != q.degenerate || p.failed != q.failed || p.error != q.error ||
        p.theta != q.theta || !detail::opt_eq(p.oracle_re, q.oracle_re) ||
        !detail::opt_eq(p.oracle_im, q.oracle_im))
      return false;
  }
  return true;
}

/// Writes the record to `path` in the requested format ("csv" or "json").
inline void emit(const RunRecord& rec, const std::string& format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file for writing: " + path);
  if (format == "csv") {
    emit_csv(rec, out);
  } else if (format == "json") {
    out << record_to_json(rec).dump(2) << "\n";
  } else {
    throw std::invalid_argument("emit: format must be csv or json");
  }
  out.flush();
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace respq
