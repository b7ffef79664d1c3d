#include "qve/fermion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qve/error.hpp"

namespace qve {

namespace {

struct Pending {
  std::vector<LadderOp> factors;
  Complex coefficient;
};

// True when the adjacent pair (left, right) is out of canonical order.
bool out_of_order(const LadderOp &left, const LadderOp &right) {
  if (left.creation != right.creation)
    return right.creation; // annihilation followed by creation
  return right.mode < left.mode;
}

} // namespace

int FockState::count() const { return std::popcount(bits); }

std::string FockState::to_string() const {
  std::string s(static_cast<std::size_t>(n_modes), '0');
  for (int p = 0; p < n_modes; ++p)
    if (occupied(p))
      s[static_cast<std::size_t>(p)] = '1';
  return s;
}

FockState FockState::from_string(const std::string &occupations) {
  require(occupations.size() <= 64, ErrorKind::ResourceLimit,
          "at most 64 modes are supported");
  FockState f{static_cast<int>(occupations.size()), 0};
  for (std::size_t p = 0; p < occupations.size(); ++p) {
    require(occupations[p] == '0' || occupations[p] == '1',
            ErrorKind::InvalidArgument, "occupations must be 0/1");
    if (occupations[p] == '1')
      f.bits |= std::uint64_t{1} << p;
  }
  return f;
}

FermionOperator FermionOperator::identity(int n_modes, Complex c) {
  FermionOperator op(n_modes);
  op.add({}, c);
  return op;
}

FermionOperator FermionOperator::term(int n_modes, std::vector<LadderOp> factors,
                                      Complex c) {
  FermionOperator op(n_modes);
  op.add(factors, c);
  return op;
}

void FermionOperator::accumulate(const std::vector<LadderOp> &canonical,
                                 Complex c) {
  auto [it, inserted] = terms_.try_emplace(canonical, c);
  if (!inserted)
    it->second += c;
  if (std::abs(it->second) < kPruneTolerance)
    terms_.erase(it);
}

void FermionOperator::add(const std::vector<LadderOp> &factors, Complex c) {
  for (const auto &f : factors)
    require(f.mode >= 0 && f.mode < n_modes_, ErrorKind::InvalidArgument,
            "ladder operator mode out of range");
  std::vector<Pending> stack{{factors, c}};
  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();
    if (std::abs(cur.coefficient) < kPruneTolerance)
      continue;
    auto &f = cur.factors;
    bool vanished = false;
    bool done = false;
    // Insertion sort; every transposition carries a sign, and a_p a+_p
    // additionally spawns the contracted term.
    while (!done && !vanished) {
      done = true;
      for (std::size_t i = 1; i < f.size(); ++i) {
        const LadderOp left = f[i - 1];
        const LadderOp right = f[i];
        if (left.creation == right.creation && left.mode == right.mode) {
          vanished = true; // a_p a_p = 0
          break;
        }
        if (!out_of_order(left, right))
          continue;
        if (!left.creation && right.creation && left.mode == right.mode) {
          std::vector<LadderOp> contracted;
          contracted.reserve(f.size() - 2);
          contracted.insert(contracted.end(), f.begin(),
                            f.begin() + static_cast<std::ptrdiff_t>(i - 1));
          contracted.insert(contracted.end(),
                            f.begin() + static_cast<std::ptrdiff_t>(i + 1),
                            f.end());
          stack.push_back({std::move(contracted), cur.coefficient});
        }
        std::swap(f[i - 1], f[i]);
        cur.coefficient = -cur.coefficient;
        done = false;
        break;
      }
    }
    if (!vanished)
      accumulate(f, cur.coefficient);
  }
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out(n_modes_);
  for (const auto &[factors, c] : terms_) {
    std::vector<LadderOp> rev(factors.rbegin(), factors.rend());
    for (auto &f : rev)
      f.creation = !f.creation;
    out.add(rev, std::conj(c));
  }
  return out;
}

bool FermionOperator::is_hermitian(double tol) const {
  return distance(adjoint()) < tol;
}

FermionOperator &FermionOperator::operator+=(const FermionOperator &other) {
  require(other.n_modes_ == n_modes_, ErrorKind::InvalidArgument,
          "mode-count mismatch");
  for (const auto &[factors, c] : other.terms_)
    accumulate(factors, c);
  return *this;
}

FermionOperator &FermionOperator::operator-=(const FermionOperator &other) {
  require(other.n_modes_ == n_modes_, ErrorKind::InvalidArgument,
          "mode-count mismatch");
  for (const auto &[factors, c] : other.terms_)
    accumulate(factors, -c);
  return *this;
}

FermionOperator &FermionOperator::operator*=(Complex c) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (std::abs(it->second) < kPruneTolerance)
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

double FermionOperator::distance(const FermionOperator &other) const {
  FermionOperator diff = *this;
  diff -= other;
  double d = 0.0;
  for (const auto &[f, c] : diff.terms())
    d = std::max(d, std::abs(c));
  return d;
}

FermionOperator multiply(const FermionOperator &a, const FermionOperator &b) {
  require(a.n_modes() == b.n_modes(), ErrorKind::InvalidArgument,
          "mode-count mismatch");
  FermionOperator out(a.n_modes());
  for (const auto &[fa, ca] : a.terms())
    for (const auto &[fb, cb] : b.terms()) {
      std::vector<LadderOp> f = fa;
      f.insert(f.end(), fb.begin(), fb.end());
      out.add(f, ca * cb);
    }
  return out;
}

std::vector<std::pair<FockState, Complex>>
apply_to_fock(const FermionOperator &op, const FockState &state) {
  std::map<std::uint64_t, Complex> acc;
  for (const auto &[factors, c] : op.terms()) {
    std::uint64_t bits = state.bits;
    double sign = 1.0;
    bool zero = false;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      const std::uint64_t mask = std::uint64_t{1} << it->mode;
      const bool occ = bits & mask;
      if (occ == it->creation) {
        zero = true;
        break;
      }
      if (std::popcount(bits & (mask - 1)) % 2)
        sign = -sign;
      bits ^= mask;
    }
    if (!zero)
      acc[bits] += sign * c;
  }
  std::vector<std::pair<FockState, Complex>> out;
  for (const auto &[bits, c] : acc)
    if (std::abs(c) >= FermionOperator::kPruneTolerance)
      out.push_back({FockState{state.n_modes, bits}, c});
  return out;
}

Eigen::MatrixXcd to_matrix(const FermionOperator &op) {
  require(op.n_modes() <= 14, ErrorKind::ResourceLimit,
          "dense fermion matrices are limited to 14 modes");
  const Eigen::Index dim = Eigen::Index{1} << op.n_modes();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col)
    for (const auto &[state, c] :
         apply_to_fock(op, {op.n_modes(), static_cast<std::uint64_t>(col)}))
      m(static_cast<Eigen::Index>(state.bits), col) += c;
  return m;
}

FermionOperator build_hamiltonian(const Eigen::MatrixXd &h_so,
                                  const Tensor4 &g_so, double e_offset) {
  const auto n = static_cast<int>(h_so.rows());
  require(h_so.cols() == n && g_so.extent() == static_cast<std::size_t>(n),
          ErrorKind::InvalidArgument, "Hamiltonian tensor shape mismatch");
  FermionOperator h(n);
  if (e_offset != 0.0)
    h.add({}, e_offset);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (h_so(p, q) != 0.0)
        h.add({cre(p), ann(q)}, h_so(p, q));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v =
              g_so(static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                   static_cast<std::size_t>(r), static_cast<std::size_t>(s));
          if (v != 0.0 && p != q && r != s)
            h.add({cre(p), cre(q), ann(s), ann(r)}, 0.5 * v);
        }
  return h;
}

FockState hartree_fock_occupation(int n_alpha, int n_beta, int n_spatial) {
  require(n_spatial >= 0 && 2 * n_spatial <= 64, ErrorKind::ResourceLimit,
          "at most 64 spin orbitals are supported");
  require(n_alpha >= 0 && n_beta >= 0 && n_alpha <= n_spatial &&
              n_beta <= n_spatial,
          ErrorKind::InvalidArgument, "electron counts exceed the orbitals");
  FockState f{2 * n_spatial, 0};
  for (int i = 0; i < n_alpha; ++i)
    f.bits |= std::uint64_t{1} << i;
  for (int i = 0; i < n_beta; ++i)
    f.bits |= std::uint64_t{1} << (n_spatial + i);
  return f;
}

FermionOperator number_operator(int n_modes, const std::vector<int> &modes) {
  FermionOperator op(n_modes);
  for (int p : modes)
    op.add({cre(p), ann(p)}, 1.0);
  return op;
}

FermionOperator number_operator(int n_modes) {
  std::vector<int> all(static_cast<std::size_t>(n_modes));
  for (int p = 0; p < n_modes; ++p)
    all[static_cast<std::size_t>(p)] = p;
  return number_operator(n_modes, all);
}

} // namespace qve
