#include "qve/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "qve/error.hpp"
#include "qve/fixture.hpp"
#include "qve/random.hpp"

namespace qve {

using nlohmann::json;

namespace {

constexpr std::uint64_t kInitStream = 0x1417;
constexpr std::uint64_t kEstimatorStream = 0xE57;
constexpr std::uint64_t kOptimizerStream = 0x0B7;

void write_text(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorKind::InvalidArgument,
          "cannot write " + path.string());
  out << text;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

std::string to_string(AnsatzKind kind) {
  return kind == AnsatzKind::UCCSD ? "uccsd" : "hea";
}

AnsatzKind parse_ansatz(std::string_view name) {
  if (name == "uccsd")
    return AnsatzKind::UCCSD;
  if (name == "hea")
    return AnsatzKind::HEA;
  fail(ErrorKind::InvalidArgument, "unknown ansatz '" + std::string(name) + "'");
}

void RunConfig::validate() const {
  require(geometry.empty() != fixture.empty(), ErrorKind::InvalidArgument,
          "give exactly one of a geometry file or a Hamiltonian fixture");
  require(shots >= 1, ErrorKind::InvalidArgument, "shots must be at least 1");
  require(ansatz.reps >= 0, ErrorKind::InvalidArgument, "reps must be non-negative");
  if (taper && mapper != Mapper::Parity)
    fail(ErrorKind::InvalidCombination, "tapering requires the parity mapping");
  if ((active_electrons < 0) != (active_orbitals < 0))
    fail(ErrorKind::InvalidArgument,
         "active electrons and orbitals must be given together");
  if (noise)
    noise->validate();
  spsa.validate();
}

std::string format_config(const RunConfig &cfg) {
  json j;
  j["geometry"] = cfg.geometry.string();
  j["fixture"] = cfg.fixture.string();
  j["active_electrons"] = cfg.active_electrons;
  j["active_orbitals"] = cfg.active_orbitals;
  j["mapper"] = to_string(cfg.mapper);
  j["taper"] = cfg.taper;
  j["ansatz"] = to_string(cfg.ansatz.kind);
  j["reps"] = cfg.ansatz.reps;
  j["shots"] = cfg.shots;
  j["seed"] = cfg.seed;
  if (cfg.noise)
    j["noise"] = {{"p1", cfg.noise->p1},
                  {"p2", cfg.noise->p2},
                  {"readout01", cfg.noise->readout01},
                  {"readout10", cfg.noise->readout10}};
  else
    j["noise"] = nullptr;
  j["spsa"] = {{"alpha", cfg.spsa.alpha},
               {"gamma", cfg.spsa.gamma},
               {"A", cfg.spsa.A},
               {"c", cfg.spsa.c},
               {"a", cfg.spsa.a},
               {"maxiter", cfg.spsa.maxiter},
               {"calibration_evals", cfg.spsa.calibration_evals},
               {"target_first_step", cfg.spsa.target_first_step}};
  j["output_dir"] = cfg.output_dir.string();
  return j.dump(2) + "\n";
}

RunConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception &e) {
    fail(ErrorKind::Parse, std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  try {
    if (j.contains("geometry"))
      cfg.geometry = j["geometry"].get<std::string>();
    if (j.contains("fixture"))
      cfg.fixture = j["fixture"].get<std::string>();
    cfg.active_electrons = j.value("active_electrons", cfg.active_electrons);
    cfg.active_orbitals = j.value("active_orbitals", cfg.active_orbitals);
    if (j.contains("mapper"))
      cfg.mapper = parse_mapper(j["mapper"].get<std::string>());
    cfg.taper = j.value("taper", cfg.taper);
    if (j.contains("ansatz"))
      cfg.ansatz.kind = parse_ansatz(j["ansatz"].get<std::string>());
    cfg.ansatz.reps = j.value("reps", cfg.ansatz.reps);
    cfg.shots = j.value("shots", cfg.shots);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("noise") && !j["noise"].is_null()) {
      const auto &n = j["noise"];
      NoiseModel m;
      m.p1 = n.value("p1", 0.0);
      m.p2 = n.value("p2", 0.0);
      m.readout01 = n.value("readout01", 0.0);
      m.readout10 = n.value("readout10", 0.0);
      cfg.noise = m;
    }
    if (j.contains("spsa")) {
      const auto &s = j["spsa"];
      cfg.spsa.alpha = s.value("alpha", cfg.spsa.alpha);
      cfg.spsa.gamma = s.value("gamma", cfg.spsa.gamma);
      cfg.spsa.A = s.value("A", cfg.spsa.A);
      cfg.spsa.c = s.value("c", cfg.spsa.c);
      cfg.spsa.a = s.value("a", cfg.spsa.a);
      cfg.spsa.maxiter = s.value("maxiter", cfg.spsa.maxiter);
      cfg.spsa.calibration_evals = s.value("calibration_evals", cfg.spsa.calibration_evals);
      cfg.spsa.target_first_step = s.value("target_first_step", cfg.spsa.target_first_step);
    }
    if (j.contains("output_dir"))
      cfg.output_dir = j["output_dir"].get<std::string>();
  } catch (const json::exception &e) {
    fail(ErrorKind::Parse, std::string("bad config value: ") + e.what());
  }
  return cfg;
}

ActiveSpaceProblem problem_from_geometry(const Molecule &mol, int active_electrons,
                                         int active_orbitals) {
  const IntegralSet ints = build_integrals(mol);
  const int n_electrons = mol.electron_count();
  require(n_electrons % 2 == 0 && mol.multiplicity == 1, ErrorKind::InvalidArgument,
          "only closed-shell singlets are supported");
  const SCFResult scf = run_rhf(ints, n_electrons);
  if (!scf.converged)
    fail(ErrorKind::Numeric, "RHF did not converge in " +
                                 std::to_string(scf.iterations) + " iterations");
  if (active_electrons < 0)
    return full_space_problem(ints, scf, n_electrons);
  require(active_electrons % 2 == 0, ErrorKind::InvalidArgument,
          "active electron count must be even");
  const int n = static_cast<int>(ints.size());
  const auto [core, active] =
      choose_active_space(n, n_electrons, active_electrons, active_orbitals);
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  const MOIntegrals mo = mo_transform(ints, scf.mo_coefficients, all);
  return active_space_reduce(mo.h1, mo.h2, core, active, active_electrons / 2,
                             active_electrons / 2, ints.e_nuc);
}

ActiveSpaceProblem load_problem(const RunConfig &cfg) {
  require(cfg.geometry.empty() != cfg.fixture.empty(), ErrorKind::InvalidArgument,
          "give exactly one of a geometry file or a Hamiltonian fixture");
  if (!cfg.fixture.empty())
    return load_fixture(cfg.fixture);
  return problem_from_geometry(load_geometry(cfg.geometry), cfg.active_electrons,
                               cfg.active_orbitals);
}

Circuit build_ansatz(const AnsatzSpec &spec, const ActiveSpaceProblem &problem,
                     Mapper mapper, bool taper) {
  if (spec.kind == AnsatzKind::UCCSD)
    return build_uccsd(problem.n_alpha, problem.n_beta, problem.n_spatial, mapper, taper);
  return build_hea(problem.n_spin_orbitals() - (taper ? 2 : 0), spec.reps);
}

std::vector<double> initial_parameters(const AnsatzSpec &spec, int n_parameters,
                                       std::uint64_t seed) {
  Engine rng = make_engine(derive_seed(seed, kInitStream));
  std::vector<double> theta(static_cast<std::size_t>(n_parameters));
  for (auto &t : theta)
    t = spec.kind == AnsatzKind::HEA ? 2.0 * std::numbers::pi * uniform01(rng)
                                     : -0.1 + 0.2 * uniform01(rng);
  return theta;
}

WindowSummary summarize_last_fraction(std::span<const double> values, double fraction) {
  require(!values.empty(), ErrorKind::InvalidArgument, "empty history");
  require(fraction > 0.0 && fraction <= 1.0, ErrorKind::InvalidArgument,
          "fraction must lie in (0, 1]");
  // Guard against 0.1 * 400 = 40.000000000000007 rounding up.
  const double raw = fraction * static_cast<double>(values.size());
  auto window = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  window = std::clamp<std::size_t>(window, 1, values.size());
  const auto tail = values.subspan(values.size() - window);
  WindowSummary s;
  s.window = window;
  s.mean = std::accumulate(tail.begin(), tail.end(), 0.0) / static_cast<double>(window);
  double ss = 0.0;
  for (double v : tail)
    ss += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(window));
  return s;
}

VQEOutcome run_vqe(const RunConfig &cfg) {
  VQEOutcome out;
  out.run_dir = cfg.output_dir;
  const bool write = !cfg.output_dir.empty();
  std::string stage = "config";
  const auto t0 = std::chrono::steady_clock::now();

  std::ofstream csv, params;
  try {
    cfg.validate();
    if (write) {
      std::filesystem::create_directories(cfg.output_dir);
      write_text(cfg.output_dir / "config.resolved", format_config(cfg));
      csv.open(cfg.output_dir / "convergence.csv");
      params.open(cfg.output_dir / "params.jsonl");
      require(csv && params, ErrorKind::InvalidArgument,
              "cannot create run files in " + cfg.output_dir.string());
      csv << "iteration,fevals,energy_ha,std_error_ha,elapsed_ms\n";
    }

    stage = "problem";
    const ActiveSpaceProblem problem = load_problem(cfg);
    stage = "mapping";
    const PauliSum h = qubit_hamiltonian(problem, cfg.mapper, cfg.taper);
    stage = "ansatz";
    const Circuit ansatz = build_ansatz(cfg.ansatz, problem, cfg.mapper, cfg.taper);
    require(ansatz.n_qubits() == h.n_qubits(), ErrorKind::InvalidArgument,
            "ansatz and Hamiltonian widths differ");
    const bool noisy = cfg.noise && cfg.noise->has_gate_noise();
    const Circuit circuit =
        noisy ? transpile(ansatz, linear_coupling(ansatz.n_qubits())).circuit : ansatz;

    stage = "exact";
    if (h.n_qubits() <= kExactReferenceCap)
      out.exact_energy = exact_ground_energy(h).energy;

    stage = "optimize";
    const CostFunction cost = [&](std::span<const double> theta, std::uint64_t index) {
      return estimate(circuit, theta, h, cfg.shots,
                      derive_seed(cfg.seed, kEstimatorStream, index), cfg.noise);
    };
    const auto callback = [&](const IterationRecord &rec) {
      if (!write)
        return;
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
      csv << rec.k << ',' << rec.function_evals << ',' << format_double(rec.energy.mean)
          << ',' << format_double(rec.energy.std_error) << ',' << ms << '\n';
      json line = {{"iteration", rec.k},
                   {"fevals", rec.function_evals},
                   {"energy", rec.energy.mean},
                   {"theta", rec.theta}};
      params << line.dump() << '\n';
    };
    out.spsa = minimize(cost,
                        initial_parameters(cfg.ansatz, ansatz.n_parameters(), cfg.seed),
                        cfg.spsa, derive_seed(cfg.seed, kOptimizerStream), callback);

    stage = "summary";
    std::vector<double> energies;
    for (const auto &r : out.spsa.history)
      energies.push_back(r.energy.mean);
    out.last = summarize_last_fraction(energies);

    if (write) {
      json r;
      r["status"] = "ok";
      r["seed"] = cfg.seed;
      r["n_qubits"] = h.n_qubits();
      r["n_parameters"] = ansatz.n_parameters();
      r["evaluations"] = out.spsa.evaluations;
      r["spsa_a"] = out.spsa.a;
      r["final_theta"] = out.spsa.theta;
      r["final_energy"] = out.spsa.final_energy.mean;
      r["final_std_error"] = out.spsa.final_energy.std_error;
      r["last_fraction"] = 0.10;
      r["last_window"] = out.last.window;
      r["last_mean"] = out.last.mean;
      r["last_std"] = out.last.std;
      if (out.exact_energy) {
        r["exact_energy"] = *out.exact_energy;
        r["delta_e"] = std::abs(out.last.mean - *out.exact_energy);
      } else {
        r["exact_energy"] = nullptr;
        r["delta_e"] = nullptr;
      }
      write_text(cfg.output_dir / "result.json", r.dump(2) + "\n");
    }
  } catch (const Error &e) {
    if (write) {
      std::error_code ec;
      std::filesystem::create_directories(cfg.output_dir, ec);
      json r = {{"status", "error"},
                {"stage", stage},
                {"kind", to_string(e.kind())},
                {"error", e.what()}};
      write_text(cfg.output_dir / "result.json", r.dump(2) + "\n");
    }
    throw;
  }
  return out;
}

std::vector<ParamsRecord> read_params_log(const std::filesystem::path &path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::InvalidArgument,
          "cannot open " + path.string());
  std::vector<ParamsRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    try {
      const json j = json::parse(line);
      ParamsRecord r;
      r.iteration = j.at("iteration").get<int>();
      r.fevals = j.value("fevals", 0L);
      r.energy = j.at("energy").get<double>();
      r.theta = j.at("theta").get<std::vector<double>>();
      out.push_back(std::move(r));
    } catch (const json::exception &e) {
      fail(ErrorKind::Parse, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<ReplayRow> replay_on_exact(std::span<const ParamsRecord> log,
                                       const Circuit &ansatz, const PauliSum &h) {
  require(ansatz.n_qubits() == h.n_qubits(), ErrorKind::InvalidArgument,
          "ansatz and Hamiltonian widths differ");
  std::vector<ReplayRow> rows;
  rows.reserve(log.size());
  for (const auto &rec : log) {
    require(static_cast<int>(rec.theta.size()) == ansatz.n_parameters(),
            ErrorKind::InvalidArgument,
            "logged theta of iteration " + std::to_string(rec.iteration) + " has " +
                std::to_string(rec.theta.size()) + " entries, ansatz expects " +
                std::to_string(ansatz.n_parameters()));
    rows.push_back({rec.iteration, rec.energy,
                    expectation_exact(h, run_circuit(ansatz, rec.theta))});
  }
  return rows;
}

std::string format_replay_csv(std::span<const ReplayRow> rows) {
  std::string out = "iteration,logged_energy_ha,exact_energy_ha\n";
  for (const auto &r : rows)
    out += std::to_string(r.iteration) + "," + format_double(r.logged_energy) + "," +
           format_double(r.exact_energy) + "\n";
  return out;
}

} // namespace qve
