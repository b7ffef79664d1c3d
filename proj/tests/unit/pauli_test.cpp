#include <gtest/gtest.h>

#include "qve/error.hpp"
#include "qve/pauli.hpp"
#include "test_support.hpp"

using namespace qve;

namespace {

using Eigen::MatrixXcd;
const Complex I(0.0, 1.0);

// Independent Kronecker assembly; qubit 0 is the least significant index bit.
MatrixXcd kron_oracle(const std::string &label) {
  MatrixXcd m = MatrixXcd::Identity(1, 1);
  for (char c : label) {
    MatrixXcd p(2, 2);
    switch (c) {
    case 'I': p << 1, 0, 0, 1; break;
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, -I, I, 0; break;
    default: p << 1, 0, 0, -1; break;
    }
    MatrixXcd k(2 * m.rows(), 2 * m.cols());
    for (Eigen::Index a = 0; a < 2; ++a)
      for (Eigen::Index b = 0; b < 2; ++b)
        k.block(a * m.rows(), b * m.cols(), m.rows(), m.cols()) = p(a, b) * m;
    m = k;
  }
  return m;
}

std::string random_label(Engine &rng, int n) {
  std::string s;
  for (int q = 0; q < n; ++q)
    s += "IXYZ"[uniform_index(rng, 4)];
  return s;
}

PauliSum random_sum(Engine &rng, int n, int terms, bool hermitian) {
  PauliSum h(n);
  for (int t = 0; t < terms; ++t) {
    const Complex c = hermitian ? Complex(uniform01(rng) - 0.5)
                                : Complex(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
    h.add(PauliTerm::from_label(random_label(rng, n), c));
  }
  return h;
}

Eigen::VectorXcd random_state(Engine &rng, int n) {
  Eigen::VectorXcd v(Eigen::Index{1} << n);
  for (auto &x : v)
    x = Complex(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
  return v.normalized();
}

} // namespace

TEST(PauliTerm, Products) {
  auto xy = multiply_terms(PauliTerm::from_label("X"), PauliTerm::from_label("Y"));
  EXPECT_EQ(xy.label(1), "Z");
  EXPECT_EQ(xy.coefficient, I);
  auto xx = multiply_terms(PauliTerm::from_label("X"), PauliTerm::from_label("X"));
  EXPECT_TRUE(xx.is_identity());
  EXPECT_EQ(xx.coefficient, Complex(1.0));
  auto p = multiply_terms(PauliTerm::from_label("XZ"), PauliTerm::from_label("ZZ"));
  EXPECT_EQ(p.label(2), "YI");
  EXPECT_EQ(p.coefficient, -I);
}

TEST(PauliTerm, LabelRoundTrip) {
  Engine rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto label = random_label(rng, 6);
    const auto term = PauliTerm::from_label(label, 0.25);
    EXPECT_EQ(term.label(6), label);
    EXPECT_EQ(term.coefficient, Complex(0.25));
  }
  EXPECT_EQ(PauliTerm::from_label("XYZI").weight(), 3);
  EXPECT_THROW(PauliTerm::from_label("XQ"), Error);
}

TEST(PauliTerm, ProductsMatchDense) {
  Engine rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_label(rng, 3), b = random_label(rng, 3);
    const auto p = multiply_terms(PauliTerm::from_label(a), PauliTerm::from_label(b));
    EXPECT_LT((p.coefficient * kron_oracle(p.label(3)) - kron_oracle(a) * kron_oracle(b)).norm(),
              1e-14);
  }
}

TEST(PauliTerm, CommutationPredicates) {
  const auto xx = PauliTerm::from_label("XX"), yy = PauliTerm::from_label("YY");
  const auto xi = PauliTerm::from_label("XI"), zi = PauliTerm::from_label("ZI");
  EXPECT_TRUE(commutes(xx, yy));
  EXPECT_FALSE(qubitwise_commutes(xx, yy));
  EXPECT_FALSE(commutes(xi, zi));
  EXPECT_TRUE(qubitwise_commutes(xi, xx));
  EXPECT_TRUE(qubitwise_commutes(PauliTerm::from_label("IZ"), zi));
}

TEST(PauliSum, DenseExamples) {
  const PauliSum z(1, {PauliTerm::from_label("Z")});
  EXPECT_EQ(to_matrix(z), (MatrixXcd(2, 2) << 1, 0, 0, -1).finished());
  EXPECT_EQ(to_matrix(PauliSum::identity(2, 0.5)), 0.5 * MatrixXcd::Identity(4, 4));
}

TEST(PauliSum, DenseMatchesKroneckerOracle) {
  Engine rng(3);
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + static_cast<int>(uniform_index(rng, 2));
    const auto h = random_sum(rng, n, 6, false);
    MatrixXcd ref = MatrixXcd::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (const auto &term : h.term_list())
      ref += term.coefficient * kron_oracle(term.label(n));
    EXPECT_LT((to_matrix(h) - ref).norm(), 1e-14);
  }
}

TEST(PauliSum, ArithmeticMatchesDense) {
  Engine rng(4);
  for (int t = 0; t < 20; ++t) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 3));
    const auto a = random_sum(rng, n, 5, false), b = random_sum(rng, n, 5, false);
    EXPECT_LT((to_matrix(a + b) - to_matrix(a) - to_matrix(b)).norm(), 1e-12);
    EXPECT_LT((to_matrix(a * b) - to_matrix(a) * to_matrix(b)).norm(), 1e-12);
  }
}

TEST(PauliSum, CancellationPrunes) {
  PauliSum h(2, {PauliTerm::from_label("XY", 1.0)});
  h.add(PauliTerm::from_label("XY", -1.0));
  EXPECT_TRUE(h.is_zero());
  h.add(PauliTerm::from_label("ZZ", 1e-13));
  EXPECT_TRUE(h.is_zero());
}

TEST(PauliSum, HermitianHasRealCoefficients) {
  Engine rng(5);
  const auto a = random_sum(rng, 3, 6, false);
  // a + a^dagger via dense conjugation in the Pauli basis.
  PauliSum dag(3);
  for (const auto &t : a.term_list())
    dag.add({t.x, t.z, std::conj(t.coefficient)});
  const auto h = a + dag;
  EXPECT_TRUE(h.is_hermitian());
  for (const auto &[k, c] : h.terms())
    EXPECT_EQ(c.imag(), 0.0);
  EXPECT_LT((to_matrix(h) - to_matrix(h).adjoint()).norm(), 1e-14);
}

TEST(PauliSum, QubitCountMismatch) {
  EXPECT_THROW(PauliSum(2) + PauliSum(3), Error);
  EXPECT_THROW(PauliSum(2, {PauliTerm::from_label("XXX")}), Error);
}

TEST(PauliSum, DenseCap) {
  try {
    to_matrix(PauliSum::identity(15));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::ResourceLimit);
  }
  EXPECT_THROW(to_matrix(PauliSum::identity(4), 3), Error);
}

TEST(Exact, TrivialCases) {
  EXPECT_DOUBLE_EQ(exact_ground_energy(PauliSum::identity(2, -0.7)).energy, -0.7);
  EXPECT_DOUBLE_EQ(exact_ground_energy(PauliSum(1, {PauliTerm::from_label("Z")})).energy, -1.0);
  EXPECT_THROW(exact_ground_energy(PauliSum(1, {PauliTerm::from_label("Z", I)})), Error);
}

TEST(Exact, EigenpairResidual) {
  Engine rng(6);
  const auto h = random_sum(rng, 4, 12, true);
  const auto g = exact_ground_energy(h);
  EXPECT_NEAR(g.state.norm(), 1.0, 1e-12);
  EXPECT_LT((to_matrix(h) * g.state - g.energy * g.state).norm(), 1e-9);
  EXPECT_NEAR(expectation_exact(h, g.state), g.energy, 1e-10);
  EXPECT_DOUBLE_EQ(spectrum(h)(0), g.energy);
}

TEST(Exact, ExpectationExamples) {
  Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(2);
  zero(0) = 1.0;
  EXPECT_DOUBLE_EQ(expectation_exact(PauliSum(1, {PauliTerm::from_label("Z")}), zero), 1.0);
  EXPECT_THROW(expectation_exact(PauliSum(1, {PauliTerm::from_label("Z")}), 2.0 * zero), Error);
}

TEST(Exact, RayleighRitzBound) {
  Engine rng(7);
  const auto h = random_sum(rng, 4, 15, true);
  const double e0 = exact_ground_energy(h).energy;
  for (int t = 0; t < 1000; ++t)
    EXPECT_GE(expectation_exact(h, random_state(rng, 4)), e0 - 1e-10);
}

TEST(Exact, ApplyMatchesDense) {
  Engine rng(8);
  const auto h = random_sum(rng, 3, 8, false);
  const auto v = random_state(rng, 3);
  EXPECT_LT((apply(h, v) - to_matrix(h) * v).norm(), 1e-13);
}
