#pragma once

// Second-quantized operators: normal-ordered ladder-operator algebra over
// spin-orbital modes.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qve/tensor.hpp"

namespace qve {

using Complex = std::complex<double>;

struct LadderOp {
  int mode;
  bool creation;

  auto operator<=>(const LadderOp &) const = default;
};

inline LadderOp cre(int mode) { return {mode, true}; }
inline LadderOp ann(int mode) { return {mode, false}; }

struct LadderTerm {
  std::vector<LadderOp> factors; // applied right to left
  Complex coefficient;
};

/// Occupation-number basis state; bit p of `bits` is n_p.
struct FockState {
  int n_modes = 0;
  std::uint64_t bits = 0;

  bool occupied(int mode) const { return (bits >> mode) & 1U; }
  int count() const;
  /// Occupations written mode 0 first, e.g. "100100".
  std::string to_string() const;
  static FockState from_string(const std::string &occupations);

  auto operator<=>(const FockState &) const = default;
};

/// Linear combination of ladder strings, kept in canonical normal order:
/// creations left of annihilations, strictly increasing modes within each
/// kind, no coefficients below 1e-12.
class FermionOperator {
public:
  using TermMap = std::map<std::vector<LadderOp>, Complex>;
  static constexpr double kPruneTolerance = 1e-12;

  FermionOperator() = default;
  explicit FermionOperator(int n_modes) : n_modes_(n_modes) {}

  static FermionOperator identity(int n_modes, Complex c = 1.0);
  static FermionOperator term(int n_modes, std::vector<LadderOp> factors,
                              Complex c = 1.0);

  int n_modes() const noexcept { return n_modes_; }
  const TermMap &terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Normal-orders `factors` and accumulates the result.
  void add(const std::vector<LadderOp> &factors, Complex c);

  FermionOperator adjoint() const;
  bool is_hermitian(double tol = 1e-10) const;

  FermionOperator &operator+=(const FermionOperator &other);
  FermionOperator &operator-=(const FermionOperator &other);
  FermionOperator &operator*=(Complex c);

  friend FermionOperator operator+(FermionOperator a, const FermionOperator &b) {
    return a += b;
  }
  friend FermionOperator operator-(FermionOperator a, const FermionOperator &b) {
    return a -= b;
  }
  friend FermionOperator operator*(Complex c, FermionOperator a) { return a *= c; }

  /// Maximum coefficient difference between two operators.
  double distance(const FermionOperator &other) const;

private:
  void accumulate(const std::vector<LadderOp> &canonical, Complex c);

  int n_modes_ = 0;
  TermMap terms_;
};

/// Normal-ordered product a * b.
FermionOperator multiply(const FermionOperator &a, const FermionOperator &b);
inline FermionOperator operator*(const FermionOperator &a,
                                 const FermionOperator &b) {
  return multiply(a, b);
}

/// Expansion of op|state>. Sign convention: a_p^dagger on a state with n_p = 0
/// gives (-1)^{sum_{j<p} n_j}.
std::vector<std::pair<FockState, Complex>>
apply_to_fock(const FermionOperator &op, const FockState &state);

/// Dense 2^n x 2^n matrix in the occupation basis (index bit p = n_p).
Eigen::MatrixXcd to_matrix(const FermionOperator &op);

/// H = e_offset + sum h_pq a+_p a_q + 1/2 sum <pq|rs> a+_p a+_q a_s a_r.
FermionOperator build_hamiltonian(const Eigen::MatrixXd &h_so,
                                  const Tensor4 &g_so, double e_offset);

/// Blocked ordering: lowest n_alpha of modes [0, n) and lowest n_beta of
/// [n, 2n) occupied.
FockState hartree_fock_occupation(int n_alpha, int n_beta, int n_spatial);

/// Sum of a+_p a_p over `modes`.
FermionOperator number_operator(int n_modes, const std::vector<int> &modes);
FermionOperator number_operator(int n_modes);

} // namespace qve
