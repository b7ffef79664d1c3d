#include <gtest/gtest.h>

#include <cmath>

#include "qve/ansatz.hpp"
#include "qve/error.hpp"
#include "qve/fixture.hpp"
#include "qve/zne.hpp"
#include "test_support.hpp"

using namespace qve;

namespace {

const std::vector<double> kFolds{1, 3, 5};

std::vector<double> sample(const std::vector<double> &lambdas, double (*f)(double)) {
  std::vector<double> out;
  for (double l : lambdas)
    out.push_back(f(l));
  return out;
}

Circuit random_circuit(Engine &rng, int n) {
  Circuit c(n);
  for (int g = 0; g < 20; ++g) {
    const int q = static_cast<int>(uniform_index(rng, n));
    switch (uniform_index(rng, n > 1 ? 4 : 3)) {
    case 0: c.ry(q, Angle::literal(uniform01(rng) * 3)); break;
    case 1: c.rz(q, Angle::literal(uniform01(rng) * 3)); break;
    case 2: c.sx(q); break;
    default: c.cx(q, (q + 1) % n); break;
    }
  }
  return c;
}

const PauliSum &beh2_tapered() {
  static const auto h =
      qubit_hamiltonian(load_fixture(test::data_path("beh2_cas.ham")), Mapper::Parity, true);
  return h;
}

} // namespace

TEST(Fold, OneIsUnchanged) {
  Engine rng(51);
  const auto c = random_circuit(rng, 3);
  const auto f = fold_circuit(c, 1);
  ASSERT_EQ(f.gates().size(), c.gates().size());
  EXPECT_LT((circuit_unitary(f, {}) - circuit_unitary(c, {})).norm(), 1e-15);
}

TEST(Fold, PreservesUnitary) {
  Engine rng(52);
  for (int n : {1, 2, 3, 4}) {
    const auto c = random_circuit(rng, n);
    const auto u = circuit_unitary(c, {});
    for (int fold : {3, 5, 7}) {
      const auto f = fold_circuit(c, fold);
      EXPECT_EQ(f.gates().size(), static_cast<std::size_t>(fold) * c.gates().size());
      EXPECT_LT((circuit_unitary(f, {}) - u).norm(), 1e-10) << n << " " << fold;
    }
  }
}

TEST(Fold, KeepsParameters) {
  auto c = build_hea(3, 1);
  std::vector<double> theta(12, 0.4);
  const auto f = fold_circuit(c, 3);
  EXPECT_EQ(f.n_parameters(), 12);
  EXPECT_LT((run_circuit(f, theta) - run_circuit(c, theta)).norm(), 1e-12);
}

TEST(Fold, EvenOrNonPositiveRejected) {
  for (int n : {0, 2, -1}) {
    try {
      fold_circuit(Circuit(1), n);
      FAIL();
    } catch (const Error &e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidFold);
    }
  }
}

TEST(Extrapolate, ExactLine) {
  const std::vector<double> e{-15.0, -14.0, -13.0};
  const auto fit = extrapolate(kFolds, e, FitModel::Linear);
  EXPECT_NEAR(fit.e0, -15.5, 1e-12);
  EXPECT_NEAR(fit.params[1], 0.5, 1e-12);
  EXPECT_LT(fit.residual, 1e-20);
}

TEST(Extrapolate, ExactQuadratic) {
  const auto e = sample(kFolds, [](double l) { return -15.6 + 0.05 * l + 0.01 * l * l; });
  const auto fit = extrapolate(kFolds, e, FitModel::Quadratic);
  EXPECT_NEAR(fit.e0, -15.6, 1e-10);
  EXPECT_NEAR(fit.params[2], 0.01, 1e-10);
}

TEST(Extrapolate, ExactExponential) {
  const auto e = sample(kFolds, [](double l) { return -15.6 + 0.2 * std::exp(-0.5 * l); });
  const auto fit = extrapolate(kFolds, e, FitModel::Exponential);
  EXPECT_FALSE(fit.fallback);
  EXPECT_NEAR(fit.params[0], -15.6, 1e-6);
  EXPECT_NEAR(fit.params[1], 0.2, 1e-5);
  EXPECT_NEAR(fit.params[2], 0.5, 1e-5);
  EXPECT_NEAR(fit.e0, -15.4, 1e-5);
}

TEST(Extrapolate, LinearResponseFitsAgree) {
  const std::vector<double> lambdas{1, 3, 5, 7};
  const auto e = sample(lambdas, [](double l) { return -15.56 + 0.013 * l; });
  const auto lin = extrapolate(lambdas, e, FitModel::Linear);
  const auto quad = extrapolate(lambdas, e, FitModel::Quadratic);
  EXPECT_NEAR(lin.e0, quad.e0, 1e-8);
  EXPECT_NEAR(lin.e0, -15.56, 1e-10);
  // No interior exponential optimum exists for a straight line.
  const auto ex = extrapolate(lambdas, e, FitModel::Exponential);
  EXPECT_TRUE(ex.fallback);
  EXPECT_NEAR(ex.e0, quad.e0, 1e-8);
}

TEST(Extrapolate, Errors) {
  const std::vector<double> two{1, 3}, e2{-1, -2};
  EXPECT_NO_THROW(extrapolate(two, e2, FitModel::Linear));
  for (FitModel m : {FitModel::Quadratic, FitModel::Exponential}) {
    try {
      extrapolate(two, e2, m);
      FAIL();
    } catch (const Error &e) {
      EXPECT_EQ(e.kind(), ErrorKind::DegenerateFit);
    }
  }
  const std::vector<double> dup{1, 1, 3}, e3{-1, -1, -2};
  EXPECT_THROW(extrapolate(dup, e3, FitModel::Quadratic), Error);
}

TEST(Extrapolate, ModelNames) {
  for (FitModel m : {FitModel::Linear, FitModel::Quadratic, FitModel::Exponential})
    EXPECT_EQ(parse_fit_model(to_string(m)), m);
  EXPECT_THROW(parse_fit_model("cubic"), Error);
}

TEST(RunZNE, NoNoiseAllFoldsAgree) {
  const auto c = transpile(build_hea(4, 1), linear_coupling(4)).circuit;
  std::vector<double> theta(16, 0.25);
  const double exact = expectation_exact(beh2_tapered(), run_circuit(c, theta));
  const std::vector<int> folds{1, 3, 5};
  const auto r = run_zne(c, theta, beh2_tapered(), folds, 20000, 3, NoiseModel{});
  ASSERT_EQ(r.points.size(), 3u);
  double sigma = 0.0;
  for (const auto &p : r.points) {
    EXPECT_NEAR(p.energy.mean, exact, 5 * p.energy.std_error);
    sigma = std::max(sigma, p.energy.std_error);
  }
  EXPECT_EQ(r.raw, r.points[0].energy.mean);
  ASSERT_EQ(r.fits.size(), 3u);
  // Extrapolating from 1, 3, 5 to 0 amplifies the point noise by at most
  // |(15, -10, 3)| / 8 for the quadratic weights.
  const double amplified = sigma * std::sqrt(15 * 15 + 10 * 10 + 3 * 3) / 8;
  for (const auto &[model, fit] : r.fits)
    EXPECT_NEAR(fit.e0, exact, 5 * amplified) << to_string(model);
}

TEST(RunZNE, SingleFoldHasNoFits) {
  const auto c = build_hea(4, 1);
  std::vector<double> theta(16, 0.1);
  const std::vector<int> folds{1};
  const auto r = run_zne(c, theta, beh2_tapered(), folds, 100, 1, NoiseModel{0.001, 0.01, 0, 0});
  EXPECT_TRUE(r.fits.empty());
  EXPECT_EQ(r.points.size(), 1u);
}

TEST(RunZNE, DeterministicAndFoldSeeded) {
  const auto c = transpile(build_hea(4, 1), linear_coupling(4)).circuit;
  std::vector<double> theta(16, -0.3);
  const NoiseModel noise{0.001, 0.01, 0.01, 0.01};
  const std::vector<int> folds{1, 3};
  const auto a = run_zne(c, theta, beh2_tapered(), folds, 500, 9, noise);
  const auto b = run_zne(c, theta, beh2_tapered(), folds, 500, 9, noise);
  EXPECT_EQ(a.points[1].energy.mean, b.points[1].energy.mean);
  EXPECT_EQ(a.fits.at(FitModel::Linear).e0, b.fits.at(FitModel::Linear).e0);
  EXPECT_EQ(a.fits.count(FitModel::Quadratic), 0u);
  // Fold 1 alone reproduces a direct estimate on its stream.
  const auto direct = estimate(c, theta, beh2_tapered(), 500, derive_seed(9, 1), noise);
  EXPECT_EQ(a.points[0].energy.mean, direct.mean);
}

TEST(RunZNE, NoiseRaisesEnergyWithFold) {
  const auto c = transpile(hf_state_circuit(hartree_fock_occupation(1, 1, 3), Mapper::Parity, true),
                           linear_coupling(4))
                     .circuit;
  const std::vector<int> folds{1, 3, 5};
  const auto r = run_zne(c, {}, beh2_tapered(), folds, 20000, 4, NoiseModel{0.01, 0.05, 0, 0});
  EXPECT_LT(r.points[0].energy.mean, r.points[2].energy.mean);
}
