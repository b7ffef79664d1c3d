#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "qve/basis.hpp"
#include "qve/error.hpp"
#include "qve/fixture.hpp"
#include "qve/pipeline.hpp"
#include "test_support.hpp"

using namespace qve;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string &name) {
  const auto dir = std::filesystem::temp_directory_path() / ("qve_pipeline_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path &p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

RunConfig beh2_config(const std::filesystem::path &out) {
  RunConfig cfg;
  cfg.fixture = test::data_path("beh2_cas.ham");
  cfg.ansatz = {AnsatzKind::HEA, 1};
  cfg.shots = 256;
  cfg.seed = 7;
  cfg.output_dir = out;
  return cfg;
}

} // namespace

TEST(Summary, Examples) {
  const std::vector<double> constant(50, -15.5);
  const auto c = summarize_last_fraction(constant);
  EXPECT_EQ(c.mean, -15.5);
  EXPECT_EQ(c.std, 0.0);
  EXPECT_EQ(c.window, 5u);

  const std::vector<double> long_run(400, 1.0);
  EXPECT_EQ(summarize_last_fraction(long_run).window, 40u);

  std::vector<double> ramp;
  for (int i = 1; i <= 10; ++i)
    ramp.push_back(i);
  const auto r = summarize_last_fraction(ramp, 0.2);
  EXPECT_EQ(r.window, 2u);
  EXPECT_DOUBLE_EQ(r.mean, 9.5);
  EXPECT_DOUBLE_EQ(r.std, 0.5);

  EXPECT_EQ(summarize_last_fraction(std::vector<double>{3.0}).window, 1u);
  EXPECT_THROW(summarize_last_fraction(std::vector<double>{}), Error);
  EXPECT_THROW(summarize_last_fraction(ramp, 0.0), Error);
}

TEST(Config, JsonRoundTrip) {
  RunConfig cfg;
  cfg.geometry = "mol.geom";
  cfg.active_electrons = 2;
  cfg.active_orbitals = 3;
  cfg.mapper = Mapper::BravyiKitaev;
  cfg.taper = false;
  cfg.ansatz = {AnsatzKind::HEA, 3};
  cfg.shots = 1000;
  cfg.seed = 123456789012345ULL;
  cfg.noise = NoiseModel{0.001, 0.01, 0.02, 0.03};
  cfg.spsa.maxiter = 17;
  cfg.output_dir = "runs/a";
  const auto text = format_config(cfg);
  const auto back = parse_config(text);
  EXPECT_EQ(format_config(back), text);
  EXPECT_EQ(back.seed, cfg.seed);
  EXPECT_EQ(back.mapper, Mapper::BravyiKitaev);
  ASSERT_TRUE(back.noise);
  EXPECT_EQ(back.noise->readout10, 0.03);
  EXPECT_EQ(back.spsa.maxiter, 17);
}

TEST(Config, Validation) {
  RunConfig cfg;
  EXPECT_THROW(cfg.validate(), Error); // no source
  cfg.fixture = "a.ham";
  EXPECT_NO_THROW(cfg.validate());
  cfg.geometry = "a.geom";
  EXPECT_THROW(cfg.validate(), Error); // both sources
  cfg.geometry.clear();
  cfg.shots = 0;
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_THROW(parse_ansatz("qaoa"), Error);
  EXPECT_EQ(parse_ansatz(to_string(AnsatzKind::UCCSD)), AnsatzKind::UCCSD);
}

TEST(Problem, LoadNeedsExactlyOneSource) {
  RunConfig cfg;
  EXPECT_THROW(load_problem(cfg), Error);
  cfg.fixture = test::data_path("beh2_cas.ham");
  EXPECT_EQ(load_problem(cfg).n_spatial, 3);
  cfg.geometry = test::data_path("h2.geom");
  EXPECT_THROW(load_problem(cfg), Error);
}

TEST(Problem, ConstantOnlyFixture) {
  const auto p = parse_fixture("norb 1\nnalpha 0\nnbeta 0\nconstant -15.0\n");
  const auto h = qubit_hamiltonian(p, Mapper::JordanWigner, false);
  EXPECT_DOUBLE_EQ(exact_ground_energy(h).energy, -15.0);
}

TEST(Problem, H2FromGeometry) {
  const auto golden = test::read_golden("h2_golden.txt");
  const auto p = problem_from_geometry(load_geometry(test::data_path("h2.geom")));
  EXPECT_EQ(p.n_spatial, 2);
  const auto h = qubit_hamiltonian(p, Mapper::Parity, true);
  EXPECT_EQ(h.n_qubits(), 2);
  EXPECT_NEAR(exact_ground_energy(h).energy, golden.at("fci"), 1e-8);
  // Fixture text survives a save/load cycle unchanged.
  const auto text = format_fixture(p);
  EXPECT_EQ(format_fixture(parse_fixture(text)), text);
}

TEST(Problem, LithiumNeedsPFunctions) {
  try {
    problem_from_geometry(load_geometry(test::data_path("lih.geom")));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedAngularMomentum);
  }
}

TEST(Ansatz, WidthsAndInitialRanges) {
  const auto p = load_fixture(test::data_path("beh2_cas.ham"));
  EXPECT_EQ(build_ansatz({AnsatzKind::UCCSD, 1}, p, Mapper::Parity, true).n_qubits(), 4);
  EXPECT_EQ(build_ansatz({AnsatzKind::UCCSD, 1}, p, Mapper::JordanWigner, false).n_qubits(), 6);
  EXPECT_EQ(build_ansatz({AnsatzKind::HEA, 2}, p, Mapper::Parity, true).n_parameters(), 24);

  const auto hea = initial_parameters({AnsatzKind::HEA, 1}, 200, 3);
  for (double t : hea) {
    EXPECT_GE(t, 0.0);
    EXPECT_LT(t, 2 * std::numbers::pi);
  }
  const auto ucc = initial_parameters({AnsatzKind::UCCSD, 1}, 200, 3);
  for (double t : ucc)
    EXPECT_LE(std::abs(t), 0.1);
  EXPECT_EQ(initial_parameters({AnsatzKind::HEA, 1}, 5, 3),
            initial_parameters({AnsatzKind::HEA, 1}, 5, 3));
}

TEST(RunVQE, SingleIterationArtifacts) {
  const auto dir = scratch("single");
  auto cfg = beh2_config(dir);
  cfg.spsa.maxiter = 1;
  const auto out = run_vqe(cfg);
  const auto rows = read_csv(dir / "convergence.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], "iteration");
  EXPECT_EQ(rows[1][1], "53");
  EXPECT_TRUE(std::filesystem::exists(dir / "params.jsonl"));
  EXPECT_EQ(parse_config(slurp(dir / "config.resolved")).seed, 7u);
  const auto r = json::parse(slurp(dir / "result.json"));
  EXPECT_EQ(r["status"], "ok");
  EXPECT_EQ(r["evaluations"], 54);
  EXPECT_EQ(r["n_qubits"], 4);
  EXPECT_EQ(out.spsa.history.size(), 1u);
}

TEST(RunVQE, SameSeedSameFiles) {
  const auto a = scratch("det_a"), b = scratch("det_b");
  auto cfg = beh2_config(a);
  cfg.spsa.maxiter = 15;
  cfg.noise = NoiseModel{0.001, 0.01, 0.01, 0.01};
  run_vqe(cfg);
  cfg.output_dir = b;
  run_vqe(cfg);
  const auto ra = read_csv(a / "convergence.csv"), rb = read_csv(b / "convergence.csv");
  ASSERT_EQ(ra.size(), 16u);
  ASSERT_EQ(ra.size(), rb.size());
  // The wall-clock column is the only one allowed to differ.
  for (std::size_t i = 0; i < ra.size(); ++i)
    for (std::size_t j = 0; j + 1 < ra[i].size(); ++j)
      EXPECT_EQ(ra[i][j], rb[i][j]) << i << "," << j;
  EXPECT_EQ(slurp(a / "params.jsonl"), slurp(b / "params.jsonl"));
}

TEST(RunVQE, ResultDeltaMatchesLog) {
  const auto dir = scratch("delta");
  auto cfg = beh2_config(dir);
  cfg.spsa.maxiter = 30;
  const auto out = run_vqe(cfg);
  const auto rows = read_csv(dir / "convergence.csv");
  std::vector<double> energies;
  for (std::size_t i = 1; i < rows.size(); ++i)
    energies.push_back(std::stod(rows[i][2]));
  const auto last = summarize_last_fraction(energies);
  EXPECT_EQ(last.window, 3u);
  const auto r = json::parse(slurp(dir / "result.json"));
  const double exact = r["exact_energy"];
  EXPECT_NEAR(exact, -15.56089, 5e-6);
  EXPECT_NEAR(r["delta_e"].get<double>(), std::abs(last.mean - exact), 1e-12);
  EXPECT_NEAR(out.last.mean, last.mean, 1e-12);
}

TEST(RunVQE, ErrorsRecordStage) {
  const auto dir = scratch("error");
  RunConfig cfg;
  cfg.geometry = test::data_path("lih.geom");
  cfg.output_dir = dir;
  try {
    run_vqe(cfg);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedAngularMomentum);
  }
  const auto r = json::parse(slurp(dir / "result.json"));
  EXPECT_EQ(r["status"], "error");
  EXPECT_EQ(r["stage"], "problem");

  cfg.shots = 0;
  EXPECT_THROW(run_vqe(cfg), Error);
  EXPECT_EQ(json::parse(slurp(dir / "result.json"))["stage"], "config");
}

TEST(Replay, NoiselessRunAgreesWithinShotNoise) {
  const auto dir = scratch("replay");
  auto cfg = beh2_config(dir);
  cfg.shots = 4096;
  cfg.spsa.maxiter = 20;
  run_vqe(cfg);
  const auto log = read_params_log(dir / "params.jsonl");
  ASSERT_EQ(log.size(), 20u);
  EXPECT_EQ(log.back().fevals, 50 + 3 * 20);
  const auto p = load_fixture(cfg.fixture);
  const auto h = qubit_hamiltonian(p, cfg.mapper, cfg.taper);
  const auto rows = replay_on_exact(log, build_ansatz(cfg.ansatz, p, cfg.mapper, cfg.taper), h);
  const auto csv = read_csv(dir / "convergence.csv");
  ASSERT_EQ(rows.size(), log.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double sigma = std::stod(csv[i + 1][3]);
    EXPECT_EQ(rows[i].logged_energy, log[i].energy);
    EXPECT_NEAR(rows[i].exact_energy, rows[i].logged_energy, 5 * sigma) << i;
  }
}

TEST(Replay, EmptyLogGivesHeaderOnly) {
  const auto h = PauliSum::identity(4, -1.0);
  const auto rows = replay_on_exact({}, build_hea(4, 1), h);
  EXPECT_TRUE(rows.empty());
  EXPECT_EQ(format_replay_csv(rows), "iteration,logged_energy_ha,exact_energy_ha\n");
}

TEST(Replay, ThetaLengthChecked) {
  std::vector<ParamsRecord> log{{1, 53, -1.0, {0.1, 0.2}}};
  EXPECT_THROW(replay_on_exact(log, build_hea(4, 1), PauliSum::identity(4)), Error);
}
