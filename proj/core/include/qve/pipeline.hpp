#pragma once

// End-to-end VQE runs: problem preparation, ansatz construction, the SPSA
// loop with run-directory artifacts, and noiseless replay of logged runs.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qve/ansatz.hpp"
#include "qve/circuit.hpp"
#include "qve/mapping.hpp"
#include "qve/scf.hpp"
#include "qve/spsa.hpp"

namespace qve {

enum class AnsatzKind { UCCSD, HEA };

std::string to_string(AnsatzKind kind);
AnsatzKind parse_ansatz(std::string_view name);

struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::UCCSD;
  int reps = 1; // HEA only
};

struct RunConfig {
  // Exactly one of geometry / fixture.
  std::filesystem::path geometry;
  std::filesystem::path fixture;
  int active_electrons = -1; // geometry only; -1 keeps every orbital
  int active_orbitals = -1;

  Mapper mapper = Mapper::Parity;
  bool taper = true;
  AnsatzSpec ansatz;
  long shots = 4096;
  std::uint64_t seed = 0;
  std::optional<NoiseModel> noise;
  SPSAConfig spsa;
  std::filesystem::path output_dir;

  void validate() const;
};

/// JSON rendering of every resolved setting (written as config.resolved).
std::string format_config(const RunConfig &cfg);
/// Reads the JSON produced by format_config; missing keys keep defaults.
RunConfig parse_config(std::string_view json_text);

/// Geometry -> integrals -> RHF -> optional active space.
ActiveSpaceProblem problem_from_geometry(const Molecule &mol, int active_electrons = -1,
                                         int active_orbitals = -1);

/// Fixture or geometry, per the config.
ActiveSpaceProblem load_problem(const RunConfig &cfg);

Circuit build_ansatz(const AnsatzSpec &spec, const ActiveSpaceProblem &problem,
                     Mapper mapper, bool taper);

/// HEA: uniform [0, 2 pi). UCCSD: uniform [-0.1, 0.1].
std::vector<double> initial_parameters(const AnsatzSpec &spec, int n_parameters,
                                       std::uint64_t seed);

struct WindowSummary {
  double mean = 0.0;
  double std = 0.0; // population standard deviation
  std::size_t window = 0;
};

/// Mean and spread of the last ceil(fraction * N) values.
WindowSummary summarize_last_fraction(std::span<const double> values,
                                      double fraction = 0.10);

struct VQEOutcome {
  SPSAResult spsa;
  WindowSummary last;
  std::optional<double> exact_energy;
  std::filesystem::path run_dir;
};

/// Largest register for which run_vqe computes an exact reference.
inline constexpr int kExactReferenceCap = 10;

/// Runs VQE and, when output_dir is set, writes convergence.csv,
/// params.jsonl, result.json and config.resolved there. Noisy runs estimate
/// on the circuit transpiled to a linear device.
VQEOutcome run_vqe(const RunConfig &cfg);

struct ReplayRow {
  int iteration = 0;
  double logged_energy = 0.0;
  double exact_energy = 0.0;
};

struct ParamsRecord {
  int iteration = 0;
  long fevals = 0;
  double energy = 0.0;
  std::vector<double> theta;
};

std::vector<ParamsRecord> read_params_log(const std::filesystem::path &path);

/// Noiseless expectation of `h` on the ansatz at every logged theta.
std::vector<ReplayRow> replay_on_exact(std::span<const ParamsRecord> log,
                                       const Circuit &ansatz, const PauliSum &h);

std::string format_replay_csv(std::span<const ReplayRow> rows);

} // namespace qve
