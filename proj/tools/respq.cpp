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

// Batch front end: parses a run configuration, executes the response sweep
// (or its dense oracle), and writes CSV/JSON spectra.
//
// Exit codes: 0 full success, 1 some frequency points failed, 2 invalid
// input (bad config, unreadable operator files, validation errors).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "respq/respq.hpp"

namespace {

int threads_from_env() {
  const char* env = std::getenv("RESPQ_THREADS");
  if (env == nullptr) return 0;
  try {
    const int v = std::stoi(env);
    return v > 0 ? v : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

std::string default_output(const std::string& config_path, const std::string& format) {
  return std::filesystem::path(config_path).stem().string() + "." + format;
}

// Dry-runs everything up to (but not including) the sweep so that broken
// inputs fail fast with a named cause.
void deep_validate(const respq::RunConfig& cfg) {
  const respq::PauliSum h0 = respq::read_pauli_file(cfg.hamiltonian);
  const int n = h0.n();
  if (!h0.is_hermitian(1e-10))
    throw std::runtime_error("hamiltonian is not Hermitian: " + cfg.hamiltonian);
  for (const std::string& path : cfg.perturbations) {
    const respq::PauliSum v = respq::read_pauli_file(path);
    if (v.n() != n)
      throw std::runtime_error("perturbation '" + path + "' acts on " + std::to_string(v.n()) +
                               " qubits but the Hamiltonian has " + std::to_string(n));
  }
  (void)respq::make_projector(cfg.projector, n);
  (void)respq::make_projector(cfg.ground_projector, n);
  const respq::AnsatzSpec spec = respq::make_response_spec(cfg, n);
  if (spec.kind != respq::AnsatzKind::OracleSpan) (void)respq::build_ansatz(spec);
  if (cfg.ground == "hf") (void)respq::hf_reference(n, cfg.occupied);
  std::cout << "OK: " << n << " qubits, " << h0.terms().size() << " Hamiltonian terms, "
            << cfg.perturbations.size() << " perturbation axis(es), " << cfg.omega_steps
            << " grid points\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"respq: frequency-domain linear response of qubit Hamiltonians"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  std::string format;
  long long seed = -1;
  int threads = 0;
  bool with_oracle = false;

  CLI::App* cmd_run = app.add_subcommand("run", "Execute the configured response sweep");
  cmd_run->add_option("--config", config_path, "Run configuration file")->required();
  cmd_run->add_option("--output", output, "Output file path");
  cmd_run->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_run->add_flag("--oracle", with_oracle,
                    "Append dense-oracle response columns and report the max deviation");
  cmd_run->add_option("--seed", seed, "Override the root seed")
      ->check(CLI::NonNegativeNumber);
  cmd_run->add_option("--threads", threads, "Sweep thread count (overrides RESPQ_THREADS)")
      ->check(CLI::PositiveNumber);

  CLI::App* cmd_validate = app.add_subcommand("validate", "Parse and validate a configuration");
  cmd_validate->add_option("--config", config_path, "Run configuration file")->required();

  CLI::App* cmd_oracle =
      app.add_subcommand("oracle", "Emit the dense-oracle spectrum without the solver");
  cmd_oracle->add_option("--config", config_path, "Run configuration file")->required();
  cmd_oracle->add_option("--output", output, "Output file path");
  cmd_oracle->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    respq::RunConfig cfg = respq::parse_config(config_path);
    if (!format.empty()) cfg.format = format;
    if (!output.empty()) cfg.output = output;
    if (cfg.output.empty()) cfg.output = default_output(config_path, cfg.format);

    if (cmd_validate->parsed()) {
      deep_validate(cfg);
      return 0;
    }

    if (cmd_oracle->parsed()) {
      const respq::RunRecord rec = respq::run_oracle(cfg);
      respq::emit(rec, cfg.format, cfg.output);
      std::cout << "oracle spectrum: " << rec.points.size() << " points -> " << cfg.output
                << "\n";
      return 0;
    }

    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (with_oracle) cfg.oracle = true;
    if (threads > 0)
      cfg.threads = threads;
    else if (cfg.threads == 0)
      cfg.threads = threads_from_env();
    if (cfg.threads == 0) cfg.threads = 1;

    const respq::RunRecord rec = respq::run(cfg);
    respq::emit(rec, cfg.format, cfg.output);
    std::cout << rec.points.size() << " points (" << rec.failures.size() << " failed) -> "
              << cfg.output << "\n";
    for (const std::string& f : rec.failures) std::cerr << "failed: " << f << "\n";
    return rec.success() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
