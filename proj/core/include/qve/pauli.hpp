#pragma once

// Sparse Pauli sums in symplectic (x-mask, z-mask) form.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qve {

using Complex = std::complex<double>;

/// Bit q of x/z selects the local operator on qubit q:
/// (0,0) I, (1,0) X, (1,1) Y, (0,1) Z. The coefficient multiplies the tensor
/// product of those Pauli matrices, so label round-trips are exact and
/// Hermitian strings carry real coefficients. Phases from products are
/// tracked as exact powers of i.
struct PauliTerm {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  Complex coefficient = 1.0;

  int weight() const;
  bool is_identity() const { return x == 0 && z == 0; }
  char op(int qubit) const;
  /// Label with qubit 0 first, e.g. "XYZI".
  std::string label(int n_qubits) const;
  static PauliTerm from_label(const std::string &label, Complex c = 1.0);
};

/// Exact product a*b.
PauliTerm multiply_terms(const PauliTerm &a, const PauliTerm &b);

/// Qubit-wise and full commutation tests.
bool commutes(const PauliTerm &a, const PauliTerm &b);
bool qubitwise_commutes(const PauliTerm &a, const PauliTerm &b);

class PauliSum {
public:
  using Key = std::pair<std::uint64_t, std::uint64_t>;
  using TermMap = std::map<Key, Complex>;
  static constexpr double kPruneTolerance = 1e-12;

  PauliSum() = default;
  explicit PauliSum(int n_qubits);
  PauliSum(int n_qubits, std::initializer_list<PauliTerm> terms);

  static PauliSum identity(int n_qubits, Complex c = 1.0);

  int n_qubits() const noexcept { return n_qubits_; }
  const TermMap &terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::vector<PauliTerm> term_list() const;
  Complex coefficient(const std::string &label) const;
  /// Coefficient of the identity string (0 if absent).
  Complex constant() const;

  void add(const PauliTerm &term);
  PauliSum &operator+=(const PauliSum &other);
  PauliSum &operator-=(const PauliSum &other);
  PauliSum &operator*=(Complex c);

  friend PauliSum operator+(PauliSum a, const PauliSum &b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum &b) { return a -= b; }
  friend PauliSum operator*(Complex c, PauliSum a) { return a *= c; }

  bool is_hermitian(double tol = 1e-10) const;
  /// Largest coefficient magnitude of this - other.
  double distance(const PauliSum &other) const;
  /// Drops terms below `tol`.
  PauliSum chopped(double tol) const;

  std::string to_string() const;

private:
  int n_qubits_ = 0;
  TermMap terms_;
};

PauliSum multiply(const PauliSum &a, const PauliSum &b);
inline PauliSum operator*(const PauliSum &a, const PauliSum &b) {
  return multiply(a, b);
}

/// Default dense-matrix cap (qubits).
inline constexpr int kDenseQubitCap = 14;

/// Dense matrix; basis index bit q is the state of qubit q.
Eigen::MatrixXcd to_matrix(const PauliSum &h, int cap = kDenseQubitCap);

struct GroundState {
  double energy;
  Eigen::VectorXcd state;
};

/// Full Hermitian eigensolve; returns the lowest eigenpair.
GroundState exact_ground_energy(const PauliSum &h, int cap = kDenseQubitCap);
/// All eigenvalues, ascending.
Eigen::VectorXd spectrum(const PauliSum &h, int cap = kDenseQubitCap);

/// h|psi> without forming the matrix.
Eigen::VectorXcd apply(const PauliSum &h, const Eigen::VectorXcd &state);

/// <psi|H|psi> for a normalized state (Hermitian H).
double expectation_exact(const PauliSum &h, const Eigen::VectorXcd &state);

} // namespace qve
