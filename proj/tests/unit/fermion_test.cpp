#include <gtest/gtest.h>

#include <bit>

#include "qve/basis.hpp"
#include "qve/error.hpp"
#include "qve/fermion.hpp"
#include "qve/scf.hpp"
#include "test_support.hpp"

using namespace qve;

namespace {

using Eigen::MatrixXcd;

// Dense a_p on n modes, built directly from the sign rule.
MatrixXcd annihilator(int n, int p) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  MatrixXcd m = MatrixXcd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b)
    if ((b >> p) & 1) {
      const int below = std::popcount(static_cast<unsigned>(b & ((1 << p) - 1)));
      m(b ^ (Eigen::Index{1} << p), b) = (below % 2) ? -1.0 : 1.0;
    }
  return m;
}

FermionOperator random_operator(int n, Engine &rng, int n_terms) {
  FermionOperator op(n);
  for (int t = 0; t < n_terms; ++t) {
    std::vector<LadderOp> f;
    const auto len = uniform_index(rng, 5);
    for (std::uint64_t k = 0; k < len; ++k)
      f.push_back({static_cast<int>(uniform_index(rng, n)), (rng() & 1) != 0});
    op.add(f, Complex(uniform01(rng) - 0.5, uniform01(rng) - 0.5));
  }
  return op;
}

// Dense matrix of an arbitrary (not normal-ordered) ladder string.
MatrixXcd product_matrix(int n, const std::vector<LadderOp> &f) {
  MatrixXcd m = MatrixXcd::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (const auto &op : f) {
    const MatrixXcd a = annihilator(n, op.mode);
    m = m * (op.creation ? MatrixXcd(a.adjoint()) : a);
  }
  return m;
}

bool normal_ordered(const std::vector<LadderOp> &f) {
  std::size_t i = 0;
  while (i < f.size() && f[i].creation)
    ++i;
  for (std::size_t j = i; j < f.size(); ++j)
    if (f[j].creation)
      return false;
  for (std::size_t j = 1; j < f.size(); ++j)
    if (f[j].creation == f[j - 1].creation && f[j].mode <= f[j - 1].mode)
      return false;
  return true;
}

} // namespace

TEST(LadderAlgebra, Nilpotent) {
  const auto a0 = FermionOperator::term(2, {ann(0)});
  EXPECT_TRUE((a0 * a0).is_zero());
  const auto c1 = FermionOperator::term(2, {cre(1)});
  EXPECT_TRUE((c1 * c1).is_zero());
}

TEST(LadderAlgebra, Anticommutator) {
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) {
      const auto a = FermionOperator::term(3, {ann(p)});
      const auto c = FermionOperator::term(3, {cre(q)});
      const auto anti = a * c + c * a;
      if (p == q)
        EXPECT_LT(anti.distance(FermionOperator::identity(3)), 1e-15);
      else
        EXPECT_TRUE(anti.is_zero());
      EXPECT_TRUE((a * FermionOperator::term(3, {ann(q)}) +
                   FermionOperator::term(3, {ann(q)}) * a)
                      .is_zero());
    }
}

TEST(LadderAlgebra, HoppingProductMatchesDense) {
  const auto x = FermionOperator::term(2, {cre(1), ann(0)});
  const auto y = FermionOperator::term(2, {cre(0), ann(1)});
  const auto xy = x * y;
  // a1+ a0 a0+ a1 = n1 - n0 n1
  FermionOperator expected(2);
  expected.add({cre(1), ann(1)}, 1.0);
  expected.add({cre(0), cre(1), ann(0), ann(1)}, 1.0);
  EXPECT_LT(xy.distance(expected), 1e-15);
  EXPECT_LT((to_matrix(xy) - to_matrix(x) * to_matrix(y)).norm(), 1e-12);
}

TEST(LadderAlgebra, CanonicalFormSigns) {
  FermionOperator op(3);
  op.add({ann(0), cre(2)}, 1.0); // = -a2+ a0
  op.add({cre(2), cre(0)}, 2.0); // = -2 a0+ a2+
  ASSERT_EQ(op.size(), 2u);
  EXPECT_EQ(op.terms().at({cre(2), ann(0)}), Complex(-1.0));
  EXPECT_EQ(op.terms().at({cre(0), cre(2)}), Complex(-2.0));
}

TEST(LadderAlgebra, PrunesCancellations) {
  FermionOperator op(2);
  op.add({cre(0), ann(1)}, 1.0);
  op.add({ann(1), cre(0)}, 1.0);
  EXPECT_TRUE(op.is_zero());
  op.add({cre(0)}, 1e-13);
  EXPECT_TRUE(op.is_zero());
}

TEST(LadderAlgebra, ModeCountMismatch) {
  EXPECT_THROW(FermionOperator::term(2, {ann(0)}) * FermionOperator::term(3, {ann(0)}), Error);
  EXPECT_THROW(FermionOperator::term(2, {ann(2)}), Error);
}

TEST(LadderAlgebra, RandomProductsMatchDense) {
  Engine rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 3));
    const auto a = random_operator(n, rng, 4);
    const auto b = random_operator(n, rng, 4);
    const auto ab = a * b;
    EXPECT_LT((to_matrix(ab) - to_matrix(a) * to_matrix(b)).norm(), 1e-12);
    for (const auto &[f, c] : ab.terms()) {
      EXPECT_TRUE(normal_ordered(f));
      EXPECT_GE(std::abs(c), FermionOperator::kPruneTolerance);
    }
  }
}

TEST(LadderAlgebra, NormalOrderingMatchesDense) {
  Engine rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 3));
    std::vector<LadderOp> f;
    const auto len = 1 + uniform_index(rng, 5);
    for (std::uint64_t k = 0; k < len; ++k)
      f.push_back({static_cast<int>(uniform_index(rng, n)), (rng() & 1) != 0});
    FermionOperator op(n);
    op.add(f, 1.0);
    EXPECT_LT((to_matrix(op) - product_matrix(n, f)).norm(), 1e-12);
  }
}

TEST(LadderAlgebra, SimplifyIsIdempotent) {
  Engine rng(3);
  const auto a = random_operator(3, rng, 10);
  FermionOperator again(3);
  for (const auto &[f, c] : a.terms())
    again.add(f, c);
  EXPECT_EQ(again.distance(a), 0.0);
}

TEST(LadderAlgebra, AdjointMatchesDense) {
  Engine rng(5);
  const auto a = random_operator(3, rng, 8);
  EXPECT_LT((to_matrix(a.adjoint()) - to_matrix(a).adjoint()).norm(), 1e-12);
  EXPECT_TRUE((a + a.adjoint()).is_hermitian());
}

TEST(FockAction, CreationSigns) {
  const auto c0 = FermionOperator::term(2, {cre(0)});
  auto out = apply_to_fock(c0, FockState::from_string("00"));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].first.to_string(), "10");
  EXPECT_EQ(out[0].second, Complex(1.0));

  const auto c1 = FermionOperator::term(2, {cre(1)});
  out = apply_to_fock(c1, FockState::from_string("10"));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].first.to_string(), "11");
  EXPECT_EQ(out[0].second, Complex(-1.0));

  EXPECT_TRUE(apply_to_fock(c0, FockState::from_string("10")).empty());
}

TEST(FockAction, NumberOperatorCounts) {
  const auto out = apply_to_fock(number_operator(4), FockState::from_string("1011"));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].first.to_string(), "1011");
  EXPECT_EQ(out[0].second, Complex(3.0));
}

TEST(FockAction, AgreesWithDenseMatrix) {
  Engine rng(9);
  const auto op = random_operator(3, rng, 8);
  const MatrixXcd m = to_matrix(op);
  for (std::uint64_t b = 0; b < 8; ++b) {
    Eigen::VectorXcd col = Eigen::VectorXcd::Zero(8);
    for (const auto &[s, c] : apply_to_fock(op, FockState{3, b}))
      col(static_cast<Eigen::Index>(s.bits)) += c;
    EXPECT_LT((col - m.col(static_cast<Eigen::Index>(b))).norm(), 1e-12);
  }
}

TEST(FockState, StringRoundTrip) {
  const auto s = FockState::from_string("100100");
  EXPECT_EQ(s.n_modes, 6);
  EXPECT_EQ(s.count(), 2);
  EXPECT_TRUE(s.occupied(0));
  EXPECT_TRUE(s.occupied(3));
  EXPECT_EQ(s.to_string(), "100100");
  EXPECT_THROW(FockState::from_string("10x"), Error);
}

TEST(HartreeFock, Occupations) {
  EXPECT_EQ(hartree_fock_occupation(1, 1, 3).to_string(), "100100");
  EXPECT_EQ(hartree_fock_occupation(0, 0, 3).to_string(), "000000");
  EXPECT_EQ(hartree_fock_occupation(3, 3, 3).to_string(), "111111");
  EXPECT_EQ(hartree_fock_occupation(2, 1, 3).to_string(), "110100");
  EXPECT_THROW(hartree_fock_occupation(4, 0, 3), Error);
}

TEST(Hamiltonian, ScalarOnly) {
  const auto h = build_hamiltonian(Eigen::MatrixXd::Zero(4, 4), Tensor4(4), -2.5);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.terms().begin()->first.size(), 0u);
  EXPECT_EQ(h.terms().begin()->second, Complex(-2.5));
}

TEST(Hamiltonian, ShapeMismatch) {
  EXPECT_THROW(build_hamiltonian(Eigen::MatrixXd::Zero(4, 4), Tensor4(3), 0.0), Error);
}

TEST(Hamiltonian, RandomSymmetricInputsAreHermitianAndConserving) {
  Engine rng(21);
  const auto p = test::random_problem(2, rng);
  const auto so = spin_orbital_expand(p);
  const auto op = build_hamiltonian(so.h, so.g, 0.3);
  EXPECT_TRUE(op.is_hermitian());
  const MatrixXcd m = to_matrix(op);
  const MatrixXcd n = to_matrix(number_operator(4));
  const MatrixXcd na = to_matrix(number_operator(4, {0, 1}));
  const MatrixXcd nb = to_matrix(number_operator(4, {2, 3}));
  EXPECT_LT((m * n - n * m).norm(), 1e-12);
  EXPECT_LT((m * na - na * m).norm(), 1e-12);
  EXPECT_LT((m * nb - nb * m).norm(), 1e-12);
}

TEST(Hamiltonian, H2GroundStateMatchesGolden) {
  const auto golden = test::read_golden("h2_golden.txt");
  const auto mol = load_geometry(test::data_path("h2.geom"));
  const auto ints = build_integrals(mol);
  const auto p = full_space_problem(ints, run_rhf(ints, 2), 2);
  const auto so = spin_orbital_expand(p);
  const auto h = build_hamiltonian(so.h, so.g, p.e_offset);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(to_matrix(h));
  EXPECT_NEAR(es.eigenvalues()(0), golden.at("fci"), 1e-8);
  // The HF determinant expectation is the RHF energy.
  const auto hf = hartree_fock_occupation(1, 1, 2);
  const Complex e = to_matrix(h)(static_cast<Eigen::Index>(hf.bits),
                                 static_cast<Eigen::Index>(hf.bits));
  EXPECT_NEAR(e.real(), golden.at("rhf"), 1e-8);
}

TEST(Hamiltonian, RandomNumberConservingCommutes) {
  Engine rng(2);
  const auto op = test::random_number_conserving(4, rng);
  const MatrixXcd m = to_matrix(op);
  const MatrixXcd n = to_matrix(number_operator(4));
  EXPECT_TRUE(op.is_hermitian());
  EXPECT_LT((m * n - n * m).norm(), 1e-12);
}
