// qve: command-line front end for the VQE pipeline.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "qve/ansatz.hpp"
#include "qve/error.hpp"
#include "qve/fixture.hpp"
#include "qve/mapping.hpp"
#include "qve/pipeline.hpp"
#include "qve/zne.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumeric = 3, kAngular = 4 };

int exit_code(qve::ErrorKind kind) {
  using K = qve::ErrorKind;
  switch (kind) {
  case K::UnsupportedAngularMomentum:
    return kAngular;
  case K::InvalidArgument:
  case K::InvalidCombination:
  case K::InvalidFold:
  case K::Parse:
    return kConfig;
  default:
    return kNumeric;
  }
}

std::string slurp(const fs::path &path) {
  std::ifstream in(path);
  if (!in)
    qve::fail(qve::ErrorKind::InvalidArgument, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Options shared by every subcommand that needs a problem.
struct ProblemOptions {
  std::string geometry;
  std::string fixture;
  int active_electrons = -1;
  int active_orbitals = -1;
  std::string mapper = "parity";
  bool taper = true;

  void attach(CLI::App *cmd) {
    cmd->add_option("--geometry", geometry, "XYZ-style geometry file (s-only basis)");
    cmd->add_option("--fixture", fixture, "Hamiltonian fixture file");
    cmd->add_option("--active-electrons", active_electrons);
    cmd->add_option("--active-orbitals", active_orbitals);
    cmd->add_option("--mapper", mapper, "jw, parity or bk")->capture_default_str();
    cmd->add_flag("--taper,!--no-taper", taper, "drop the two parity symmetry qubits")
        ->capture_default_str();
  }

  void apply(qve::RunConfig &cfg) const {
    cfg.geometry = geometry;
    cfg.fixture = fixture;
    cfg.active_electrons = active_electrons;
    cfg.active_orbitals = active_orbitals;
    cfg.mapper = qve::parse_mapper(mapper);
    cfg.taper = taper && cfg.mapper == qve::Mapper::Parity;
  }
};

std::vector<std::string> split(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      out.push_back(item);
  return out;
}

unsigned thread_budget() {
  if (const char *env = std::getenv("QVE_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1)
      return static_cast<unsigned>(n);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::string gnuplot_script(const fs::path &csv, std::optional<double> exact) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set xlabel 'iteration'\nset ylabel 'energy (Ha)'\n"
    << "plot '" << csv.string() << "' using 1:3:4 with yerrorlines title 'VQE'";
  if (exact) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", *exact);
    s << ", " << buf << " with lines dashtype 2 title 'exact'";
  }
  s << "\n";
  return s.str();
}

int cmd_hamiltonian(const ProblemOptions &p, const std::string &out) {
  qve::require(!p.geometry.empty(), qve::ErrorKind::InvalidArgument,
               "hamiltonian needs --geometry");
  const auto problem = qve::problem_from_geometry(qve::load_geometry(p.geometry),
                                                  p.active_electrons, p.active_orbitals);
  const std::string comment = "generated from " + fs::path(p.geometry).filename().string();
  if (out.empty())
    std::cout << qve::format_fixture(problem, comment);
  else
    qve::save_fixture(problem, out, comment);
  return kOk;
}

int cmd_map(const ProblemOptions &p, bool all, bool terms) {
  qve::RunConfig cfg;
  p.apply(cfg);
  const auto problem = qve::load_problem(cfg);
  std::vector<std::pair<qve::Mapper, bool>> rows;
  if (all)
    rows = {{qve::Mapper::JordanWigner, false},
            {qve::Mapper::Parity, false},
            {qve::Mapper::Parity, true},
            {qve::Mapper::BravyiKitaev, false}};
  else
    rows = {{cfg.mapper, cfg.taper}};
  std::printf("%-16s %8s %8s %10s\n", "mapping", "qubits", "terms", "avg_weight");
  for (auto [m, t] : rows) {
    const auto h = qve::qubit_hamiltonian(problem, m, t);
    const auto st = qve::mapping_stats(h);
    const std::string name = qve::to_string(m) + (t ? "+taper" : "");
    std::printf("%-16s %8d %8d %10.2f\n", name.c_str(), st.n_qubits, st.n_pauli_terms,
                st.avg_weight);
    if (terms)
      std::cout << h.to_string();
  }
  return kOk;
}

int cmd_exact(const ProblemOptions &p) {
  qve::RunConfig cfg;
  p.apply(cfg);
  const auto problem = qve::load_problem(cfg);
  const auto h = qve::qubit_hamiltonian(problem, cfg.mapper, cfg.taper);
  const auto ground = qve::exact_ground_energy(h);
  const auto hf = qve::hf_state_circuit(
      qve::hartree_fock_occupation(problem.n_alpha, problem.n_beta, problem.n_spatial),
      cfg.mapper, cfg.taper);
  const double e_hf = qve::expectation_exact(h, qve::run_circuit(hf, {}));
  json j = {{"n_qubits", h.n_qubits()},
            {"exact_energy", ground.energy},
            {"hf_energy", e_hf},
            {"e_offset", problem.e_offset}};
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_vqe(qve::RunConfig base, const std::vector<std::uint64_t> &seeds, bool gnuplot) {
  if (seeds.size() <= 1) {
    if (!seeds.empty())
      base.seed = seeds.front();
    const auto out = qve::run_vqe(base);
    std::printf("seed %llu  last-10%% mean %.8f Ha  std %.8f",
                static_cast<unsigned long long>(base.seed), out.last.mean, out.last.std);
    if (out.exact_energy)
      std::printf("  exact %.8f  dE %.3f mHa", *out.exact_energy,
                  1e3 * std::abs(out.last.mean - *out.exact_energy));
    std::printf("\n");
    if (gnuplot && !base.output_dir.empty())
      std::cout << gnuplot_script(base.output_dir / "convergence.csv", out.exact_energy);
    return kOk;
  }

  // Independent seeds; every run is deterministic on its own.
  std::vector<std::optional<qve::VQEOutcome>> results(seeds.size());
  std::vector<std::string> errors(seeds.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i; (i = next++) < seeds.size();) {
      qve::RunConfig cfg = base;
      cfg.seed = seeds[i];
      if (!base.output_dir.empty())
        cfg.output_dir = base.output_dir / ("seed_" + std::to_string(seeds[i]));
      try {
        results[i] = qve::run_vqe(cfg);
      } catch (const std::exception &e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n_threads = std::min<unsigned>(thread_budget(), seeds.size());
  for (unsigned t = 0; t < n_threads; ++t)
    pool.emplace_back(worker);
  for (auto &t : pool)
    t.join();

  int status = kOk;
  std::printf("%8s %16s %12s %10s\n", "seed", "last10_mean", "last10_std", "dE_mHa");
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!results[i]) {
      std::printf("%8llu  failed: %s\n", static_cast<unsigned long long>(seeds[i]),
                  errors[i].c_str());
      status = kNumeric;
      continue;
    }
    const auto &r = *results[i];
    std::printf("%8llu %16.8f %12.8f %10.3f\n", static_cast<unsigned long long>(seeds[i]),
                r.last.mean, r.last.std,
                r.exact_energy ? 1e3 * std::abs(r.last.mean - *r.exact_energy) : NAN);
  }
  return status;
}

struct RunArtifacts {
  qve::RunConfig cfg;
  qve::ActiveSpaceProblem problem;
  qve::PauliSum h;
  qve::Circuit ansatz;
};

RunArtifacts load_run(const fs::path &dir) {
  RunArtifacts r;
  r.cfg = qve::parse_config(slurp(dir / "config.resolved"));
  r.problem = qve::load_problem(r.cfg);
  r.h = qve::qubit_hamiltonian(r.problem, r.cfg.mapper, r.cfg.taper);
  r.ansatz = qve::build_ansatz(r.cfg.ansatz, r.problem, r.cfg.mapper, r.cfg.taper);
  return r;
}

int cmd_replay(const fs::path &dir, const std::string &out) {
  const auto run = load_run(dir);
  const auto log = qve::read_params_log(dir / "params.jsonl");
  const auto rows = qve::replay_on_exact(log, run.ansatz, run.h);
  const std::string csv = qve::format_replay_csv(rows);
  if (out.empty())
    std::cout << csv;
  else
    std::ofstream(out) << csv;
  return kOk;
}

int cmd_zne(const fs::path &dir, const std::string &folds_arg, const std::string &fits_arg,
            long shots, std::uint64_t seed, const std::string &noise_file,
            const std::string &csv_out) {
  const auto run = load_run(dir);
  const json result = json::parse(slurp(dir / "result.json"));
  qve::require(result.value("status", "") == "ok", qve::ErrorKind::InvalidArgument,
               "run in " + dir.string() + " did not finish");
  const auto theta = result.at("final_theta").get<std::vector<double>>();

  std::vector<int> folds;
  for (const auto &f : split(folds_arg))
    folds.push_back(std::stoi(f));
  std::vector<qve::FitModel> models;
  for (const auto &f : split(fits_arg))
    models.push_back(qve::parse_fit_model(f));
  const auto noise = qve::parse_noise_config(slurp(noise_file));
  const auto circuit =
      qve::transpile(run.ansatz, qve::linear_coupling(run.ansatz.n_qubits())).circuit;
  const auto z = qve::run_zne(circuit, theta, run.h, folds, shots, seed, noise, models);

  json j;
  j["raw"] = z.raw;
  j["points"] = json::array();
  for (const auto &p : z.points)
    j["points"].push_back(
        {{"fold", p.fold}, {"mean", p.energy.mean}, {"std_error", p.energy.std_error}});
  for (const auto &[m, f] : z.fits)
    j["fits"][qve::to_string(m)] = {{"e0", f.e0},
                                    {"params", f.params},
                                    {"residual", f.residual},
                                    {"fallback", f.fallback}};
  std::cout << j.dump(2) << "\n";
  if (!csv_out.empty()) {
    std::ofstream csv(csv_out);
    csv << "lambda,mean_ha,std_error_ha\n";
    for (const auto &p : z.points) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", p.fold, p.energy.mean,
                    p.energy.std_error);
      csv << buf;
    }
  }
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Variational quantum eigensolver pipeline"};
  app.require_subcommand(1);

  ProblemOptions ham_p, map_p, exact_p, vqe_p;

  std::string ham_out;
  auto *ham = app.add_subcommand("hamiltonian", "Geometry to Hamiltonian fixture");
  ham_p.attach(ham);
  ham->add_option("-o,--output", ham_out, "fixture path (stdout if omitted)");

  bool map_all = false, map_terms = false;
  auto *map = app.add_subcommand("map", "Qubit mapping statistics");
  map_p.attach(map);
  map->add_flag("--all", map_all, "JW, parity, tapered parity and BK side by side");
  map->add_flag("--terms", map_terms, "print every Pauli term");

  auto *exact = app.add_subcommand("exact", "Exact ground and HF energies");
  exact_p.attach(exact);

  qve::RunConfig vcfg;
  std::string config_file, noise_file, ansatz = "uccsd", seeds_arg, out_dir;
  bool gnuplot = false;
  auto *vqe = app.add_subcommand("vqe", "Run VQE with SPSA");
  vqe_p.attach(vqe);
  vqe->add_option("--config", config_file, "JSON config (as written to config.resolved)");
  vqe->add_option("--ansatz", ansatz, "uccsd or hea")->capture_default_str();
  vqe->add_option("--reps", vcfg.ansatz.reps, "HEA entangling layers")->capture_default_str();
  vqe->add_option("--shots", vcfg.shots)->capture_default_str();
  vqe->add_option("--maxiter", vcfg.spsa.maxiter)->capture_default_str();
  vqe->add_option("--seed", vcfg.seed)->capture_default_str();
  vqe->add_option("--seeds", seeds_arg, "comma-separated batch of seeds");
  vqe->add_option("--noise", noise_file, "noise config file");
  vqe->add_option("--out", out_dir, "run directory");
  vqe->add_flag("--gnuplot", gnuplot, "print a gnuplot script for the convergence CSV");

  std::string replay_dir, replay_out;
  auto *replay = app.add_subcommand("replay", "Noiseless energies of a logged run");
  replay->add_option("--run", replay_dir, "run directory")->required();
  replay->add_option("-o,--output", replay_out, "CSV path (stdout if omitted)");

  std::string zne_dir, zne_folds = "1,3,5", zne_fits = "linear,quadratic,exponential",
                       zne_noise, zne_csv;
  long zne_shots = 40000;
  std::uint64_t zne_seed = 0;
  auto *zne = app.add_subcommand("zne", "Zero-noise extrapolation at a run's final parameters");
  zne->add_option("--run", zne_dir, "run directory")->required();
  zne->add_option("--folds", zne_folds)->capture_default_str();
  zne->add_option("--fit", zne_fits)->capture_default_str();
  zne->add_option("--shots", zne_shots)->capture_default_str();
  zne->add_option("--seed", zne_seed)->capture_default_str();
  zne->add_option("--noise", zne_noise, "noise config file")->required();
  zne->add_option("--csv", zne_csv, "write (lambda, mean, stderr) rows here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*ham)
      return cmd_hamiltonian(ham_p, ham_out);
    if (*map)
      return cmd_map(map_p, map_all, map_terms);
    if (*exact)
      return cmd_exact(exact_p);
    if (*vqe) {
      qve::RunConfig cfg = vcfg;
      if (!config_file.empty()) {
        cfg = qve::parse_config(slurp(config_file));
        // Flags given explicitly on the command line win over the file.
        if (vqe->count("--shots"))
          cfg.shots = vcfg.shots;
        if (vqe->count("--maxiter"))
          cfg.spsa.maxiter = vcfg.spsa.maxiter;
        if (vqe->count("--seed"))
          cfg.seed = vcfg.seed;
        if (vqe->count("--reps"))
          cfg.ansatz.reps = vcfg.ansatz.reps;
        if (vqe->count("--ansatz"))
          cfg.ansatz.kind = qve::parse_ansatz(ansatz);
        if (!vqe_p.fixture.empty() || !vqe_p.geometry.empty())
          vqe_p.apply(cfg);
      } else {
        vqe_p.apply(cfg);
        cfg.ansatz.kind = qve::parse_ansatz(ansatz);
      }
      if (!noise_file.empty())
        cfg.noise = qve::parse_noise_config(slurp(noise_file));
      if (!out_dir.empty())
        cfg.output_dir = out_dir;
      std::vector<std::uint64_t> seeds;
      for (const auto &s : split(seeds_arg))
        seeds.push_back(std::stoull(s));
      return cmd_vqe(cfg, seeds, gnuplot);
    }
    if (*replay)
      return cmd_replay(replay_dir, replay_out);
    if (*zne)
      return cmd_zne(zne_dir, zne_folds, zne_fits, zne_shots, zne_seed, zne_noise, zne_csv);
  } catch (const qve::Error &e) {
    std::cerr << "qve: " << qve::to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::invalid_argument &e) {
    std::cerr << "qve: bad number: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception &e) {
    std::cerr << "qve: " << e.what() << "\n";
    return kNumeric;
  }
  return kOk;
}
