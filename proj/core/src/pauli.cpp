#include "qve/pauli.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "qve/error.hpp"

namespace qve {

namespace {

const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int popcount(std::uint64_t v) { return std::popcount(v); }

void check_width(int n_qubits) {
  require(n_qubits >= 0 && n_qubits <= 64, ErrorKind::ResourceLimit,
          "Pauli sums support at most 64 qubits");
}

} // namespace

int PauliTerm::weight() const { return popcount(x | z); }

char PauliTerm::op(int qubit) const {
  const bool xb = (x >> qubit) & 1U;
  const bool zb = (z >> qubit) & 1U;
  return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
}

std::string PauliTerm::label(int n_qubits) const {
  std::string s;
  for (int q = 0; q < n_qubits; ++q)
    s += op(q);
  return s;
}

PauliTerm PauliTerm::from_label(const std::string &label, Complex c) {
  require(label.size() <= 64, ErrorKind::ResourceLimit,
          "Pauli labels support at most 64 qubits");
  PauliTerm t{0, 0, c};
  for (std::size_t q = 0; q < label.size(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (label[q]) {
    case 'I':
      break;
    case 'X':
      t.x |= bit;
      break;
    case 'Y':
      t.x |= bit;
      t.z |= bit;
      break;
    case 'Z':
      t.z |= bit;
      break;
    default:
      fail(ErrorKind::Parse, "invalid Pauli label '" + label + "'");
    }
  }
  return t;
}

PauliTerm multiply_terms(const PauliTerm &a, const PauliTerm &b) {
  // P = i^{|x&z|} X^x Z^z; reorder Z^{z_a} X^{x_b} with a sign per overlap.
  PauliTerm out{a.x ^ b.x, a.z ^ b.z, a.coefficient * b.coefficient};
  const int power = popcount(a.x & a.z) + popcount(b.x & b.z) +
                    2 * popcount(a.z & b.x) - popcount(out.x & out.z);
  out.coefficient *= kIPow[((power % 4) + 4) % 4];
  return out;
}

bool commutes(const PauliTerm &a, const PauliTerm &b) {
  return (popcount(a.x & b.z) + popcount(a.z & b.x)) % 2 == 0;
}

bool qubitwise_commutes(const PauliTerm &a, const PauliTerm &b) {
  const std::uint64_t both = (a.x | a.z) & (b.x | b.z);
  return ((a.x ^ b.x) & both) == 0 && ((a.z ^ b.z) & both) == 0;
}

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) { check_width(n_qubits); }

PauliSum::PauliSum(int n_qubits, std::initializer_list<PauliTerm> terms)
    : PauliSum(n_qubits) {
  for (const auto &t : terms)
    add(t);
}

PauliSum PauliSum::identity(int n_qubits, Complex c) {
  PauliSum s(n_qubits);
  s.add({0, 0, c});
  return s;
}

std::vector<PauliTerm> PauliSum::term_list() const {
  std::vector<PauliTerm> out;
  out.reserve(terms_.size());
  for (const auto &[k, c] : terms_)
    out.push_back({k.first, k.second, c});
  return out;
}

Complex PauliSum::coefficient(const std::string &label) const {
  const auto t = PauliTerm::from_label(label);
  const auto it = terms_.find({t.x, t.z});
  return it == terms_.end() ? Complex{} : it->second;
}

Complex PauliSum::constant() const {
  const auto it = terms_.find({0, 0});
  return it == terms_.end() ? Complex{} : it->second;
}

void PauliSum::add(const PauliTerm &term) {
  const std::uint64_t mask =
      n_qubits_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_qubits_) - 1;
  require(((term.x | term.z) & ~mask) == 0, ErrorKind::InvalidArgument,
          "Pauli term acts outside the register");
  auto [it, inserted] = terms_.try_emplace({term.x, term.z}, term.coefficient);
  if (!inserted)
    it->second += term.coefficient;
  if (std::abs(it->second) < kPruneTolerance)
    terms_.erase(it);
}

PauliSum &PauliSum::operator+=(const PauliSum &other) {
  require(other.n_qubits_ == n_qubits_, ErrorKind::InvalidArgument,
          "qubit-count mismatch");
  for (const auto &[k, c] : other.terms_)
    add({k.first, k.second, c});
  return *this;
}

PauliSum &PauliSum::operator-=(const PauliSum &other) {
  require(other.n_qubits_ == n_qubits_, ErrorKind::InvalidArgument,
          "qubit-count mismatch");
  for (const auto &[k, c] : other.terms_)
    add({k.first, k.second, -c});
  return *this;
}

PauliSum &PauliSum::operator*=(Complex c) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (std::abs(it->second) < kPruneTolerance)
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto &[k, c] : terms_)
    if (std::abs(c.imag()) > tol)
      return false;
  return true;
}

double PauliSum::distance(const PauliSum &other) const {
  PauliSum d = *this;
  d -= other;
  double m = 0.0;
  for (const auto &[k, c] : d.terms())
    m = std::max(m, std::abs(c));
  return m;
}

PauliSum PauliSum::chopped(double tol) const {
  PauliSum out(n_qubits_);
  for (const auto &[k, c] : terms_)
    if (std::abs(c) >= tol)
      out.terms_.emplace(k, c);
  return out;
}

std::string PauliSum::to_string() const {
  std::ostringstream os;
  os.precision(12);
  for (const auto &[k, c] : terms_) {
    os << "(" << c.real();
    if (c.imag() != 0.0)
      os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
    os << ") " << PauliTerm{k.first, k.second, c}.label(n_qubits_) << "\n";
  }
  return os.str();
}

PauliSum multiply(const PauliSum &a, const PauliSum &b) {
  require(a.n_qubits() == b.n_qubits(), ErrorKind::InvalidArgument,
          "qubit-count mismatch");
  PauliSum out(a.n_qubits());
  for (const auto &[ka, ca] : a.terms())
    for (const auto &[kb, cb] : b.terms())
      out.add(multiply_terms({ka.first, ka.second, ca}, {kb.first, kb.second, cb}));
  return out;
}

Eigen::MatrixXcd to_matrix(const PauliSum &h, int cap) {
  if (h.n_qubits() > cap)
    fail(ErrorKind::ResourceLimit, "dense matrix of " +
                                       std::to_string(h.n_qubits()) +
                                       " qubits exceeds the cap of " +
                                       std::to_string(cap));
  const std::uint64_t dim = std::uint64_t{1} << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (const auto &[k, c] : h.terms()) {
    const auto [x, z] = k;
    const Complex base = c * kIPow[popcount(x & z) % 4];
    for (std::uint64_t col = 0; col < dim; ++col) {
      const Complex v = popcount(z & col) % 2 ? -base : base;
      m(static_cast<Eigen::Index>(col ^ x), static_cast<Eigen::Index>(col)) += v;
    }
  }
  return m;
}

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> diagonalize(const PauliSum &h,
                                                             int cap) {
  require(h.is_hermitian(), ErrorKind::InvalidArgument,
          "exact diagonalization needs a Hermitian operator");
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(to_matrix(h, cap));
}

} // namespace

GroundState exact_ground_energy(const PauliSum &h, int cap) {
  const auto es = diagonalize(h, cap);
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

Eigen::VectorXd spectrum(const PauliSum &h, int cap) {
  return diagonalize(h, cap).eigenvalues();
}

Eigen::VectorXcd apply(const PauliSum &h, const Eigen::VectorXcd &state) {
  const std::uint64_t dim = std::uint64_t{1} << h.n_qubits();
  require(static_cast<std::uint64_t>(state.size()) == dim,
          ErrorKind::InvalidArgument, "state dimension does not match the operator");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.size());
  for (const auto &[k, c] : h.terms()) {
    const auto [x, z] = k;
    const Complex base = c * kIPow[popcount(x & z) % 4];
    for (std::uint64_t col = 0; col < dim; ++col) {
      const Complex v = popcount(z & col) % 2 ? -base : base;
      out(static_cast<Eigen::Index>(col ^ x)) +=
          v * state(static_cast<Eigen::Index>(col));
    }
  }
  return out;
}

double expectation_exact(const PauliSum &h, const Eigen::VectorXcd &state) {
  require(std::abs(state.norm() - 1.0) < 1e-10, ErrorKind::InvalidArgument,
          "expectation_exact needs a normalized state");
  const Complex e = state.dot(apply(h, state));
  if (h.is_hermitian() && std::abs(e.imag()) > 1e-10)
    fail(ErrorKind::Numeric, "Hermitian expectation has an imaginary part");
  return e.real();
}

} // namespace qve
