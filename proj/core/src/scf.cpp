#include "qve/scf.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qve/error.hpp"

namespace qve {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;

Index idx(std::size_t i) { return static_cast<Index>(i); }

MatrixXd fock_matrix(const IntegralSet &ints, const MatrixXd &hcore,
                     const MatrixXd &density) {
  const std::size_t n = ints.size();
  MatrixXd f = hcore;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      double g = 0.0;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          g += density(idx(r), idx(s)) *
               (ints.eri(p, q, r, s) - 0.5 * ints.eri(p, r, q, s));
      f(idx(p), idx(q)) += g;
    }
  return f;
}

} // namespace

MatrixXd symmetric_orthogonalizer(const MatrixXd &overlap) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(overlap);
  const auto &w = es.eigenvalues();
  if (w.minCoeff() < 1e-10)
    fail(ErrorKind::LinearDependence,
         "overlap matrix is not positive definite (smallest eigenvalue " +
             std::to_string(w.minCoeff()) + ")");
  return es.eigenvectors() * w.cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

SCFResult run_rhf(const IntegralSet &ints, int n_electrons,
                  const SCFOptions &options) {
  const Index n = idx(ints.size());
  require(n_electrons >= 0 && n_electrons % 2 == 0, ErrorKind::InvalidArgument,
          "restricted Hartree-Fock needs an even electron count");
  const Index n_occ = n_electrons / 2;
  require(n_occ <= n, ErrorKind::InvalidArgument,
          "more doubly occupied orbitals than basis functions");

  const MatrixXd x = symmetric_orthogonalizer(ints.overlap);
  const MatrixXd hcore = ints.core_hamiltonian();

  SCFResult result;
  auto diagonalize = [&](const MatrixXd &f) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(x.transpose() * f * x);
    result.mo_coefficients = x * es.eigenvectors();
    result.orbital_energies = es.eigenvalues();
    const MatrixXd c_occ = result.mo_coefficients.leftCols(n_occ);
    return MatrixXd(2.0 * c_occ * c_occ.transpose());
  };
  auto energy = [&](const MatrixXd &density, const MatrixXd &f) {
    return 0.5 * (density.cwiseProduct(hcore + f)).sum() + ints.e_nuc;
  };

  MatrixXd density = diagonalize(hcore);
  double e_old = energy(density, fock_matrix(ints, hcore, density));
  bool damping = false;
  int sign_flips = 0;
  double last_delta = 0.0;

  for (int it = 1; it <= options.max_iterations; ++it) {
    const MatrixXd f = fock_matrix(ints, hcore, density);
    MatrixXd next = diagonalize(f);
    if (damping)
      next = 0.5 * next + 0.5 * density;
    const MatrixXd f_next = fock_matrix(ints, hcore, next);
    const double e_new = energy(next, f_next);
    const double delta_e = e_new - e_old;
    const double rms = std::sqrt((next - density).squaredNorm() /
                                 static_cast<double>(n * n));
    result.iterations = it;
    density = next;
    e_old = e_new;
    if (std::abs(delta_e) < options.energy_tolerance &&
        rms < options.density_tolerance) {
      result.converged = true;
      break;
    }
    // Oscillation: ten consecutive sign changes of the energy step.
    sign_flips = (delta_e * last_delta < 0.0) ? sign_flips + 1 : 0;
    last_delta = delta_e;
    if (sign_flips >= 10)
      damping = true;
  }
  // Orbitals consistent with the final density.
  diagonalize(fock_matrix(ints, hcore, density));
  result.density = density;
  result.total_energy = energy(density, fock_matrix(ints, hcore, density));
  return result;
}

MOIntegrals mo_transform(const IntegralSet &ints, const MatrixXd &c_full,
                         const std::vector<int> &active_columns) {
  const std::size_t n = ints.size();
  require(static_cast<std::size_t>(c_full.rows()) == n, ErrorKind::InvalidArgument,
          "coefficient matrix rows must match the AO count");
  const std::size_t m = active_columns.size();
  MatrixXd c(idx(n), idx(m));
  for (std::size_t k = 0; k < m; ++k) {
    const int col = active_columns[k];
    require(col >= 0 && col < c_full.cols(), ErrorKind::InvalidArgument,
            "active column out of range");
    c.col(idx(k)) = c_full.col(col);
  }

  MOIntegrals out;
  out.h1 = c.transpose() * ints.core_hamiltonian() * c;

  // Quarter transforms on the chemist tensor (ab|cd): d, c, b, a in turn.
  auto transform_last = [&](const std::vector<double> &in, std::size_t d0,
                            std::size_t d1, std::size_t d2, std::size_t d3) {
    // in has extents (d0, d1, d2, d3) with d3 == n; output (m, d0, d1, d2),
    // i.e. the new index is rotated to the front.
    std::vector<double> res(m * d0 * d1 * d2, 0.0);
    for (std::size_t i = 0; i < d0; ++i)
      for (std::size_t j = 0; j < d1; ++j)
        for (std::size_t k = 0; k < d2; ++k)
          for (std::size_t l = 0; l < d3; ++l) {
            const double v = in[((i * d1 + j) * d2 + k) * d3 + l];
            if (v == 0.0)
              continue;
            for (std::size_t t = 0; t < m; ++t)
              res[((t * d0 + i) * d1 + j) * d2 + k] += c(idx(l), idx(t)) * v;
          }
    return res;
  };
  std::vector<double> t = ints.eri.data();
  t = transform_last(t, n, n, n, n); // (s, a, b, c)
  t = transform_last(t, m, n, n, n); // (r, s, a, b)
  t = transform_last(t, m, m, n, n); // (q, r, s, a)
  t = transform_last(t, m, m, m, n); // (p, q, r, s) chemist (pq|rs)

  out.h2 = Tensor4(m);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s)
          // <pq|rs> = (pr|qs)
          out.h2(p, q, r, s) = t[((p * m + r) * m + q) * m + s];
  return out;
}

ActiveSpaceProblem active_space_reduce(const MatrixXd &h1_full,
                                       const Tensor4 &h2_full,
                                       const std::vector<int> &core,
                                       const std::vector<int> &active,
                                       int n_active_alpha, int n_active_beta,
                                       double e_nuc) {
  const auto n = static_cast<int>(h1_full.rows());
  require(h2_full.extent() == static_cast<std::size_t>(n),
          ErrorKind::InvalidArgument, "h1/h2 size mismatch");
  std::set<int> seen;
  for (int i : core)
    require(i >= 0 && i < n && seen.insert(i).second, ErrorKind::InvalidArgument,
            "core indices must be distinct and in range");
  for (int i : active)
    require(i >= 0 && i < n && seen.insert(i).second, ErrorKind::InvalidArgument,
            "active indices must be distinct, in range and disjoint from core");
  const auto m = static_cast<int>(active.size());
  require(n_active_alpha >= 0 && n_active_beta >= 0 && n_active_alpha <= m &&
              n_active_beta <= m,
          ErrorKind::InvalidArgument,
          "active electron count inconsistent with the active orbitals");

  const auto g = [&](int p, int q, int r, int s) {
    return h2_full(static_cast<std::size_t>(p), static_cast<std::size_t>(q),
                   static_cast<std::size_t>(r), static_cast<std::size_t>(s));
  };

  ActiveSpaceProblem out;
  out.n_spatial = m;
  out.n_alpha = n_active_alpha;
  out.n_beta = n_active_beta;
  out.e_offset = e_nuc;
  for (int c : core) {
    out.e_offset += 2.0 * h1_full(c, c);
    for (int d : core)
      out.e_offset += 2.0 * g(c, d, c, d) - g(c, d, d, c);
  }
  out.h1.resize(m, m);
  out.h2 = Tensor4(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int p = active[static_cast<std::size_t>(i)];
      const int q = active[static_cast<std::size_t>(j)];
      double v = h1_full(p, q);
      for (int c : core)
        v += 2.0 * g(p, c, q, c) - g(p, c, c, q);
      out.h1(i, j) = v;
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          out.h2(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                 static_cast<std::size_t>(k), static_cast<std::size_t>(l)) =
              g(p, q, active[static_cast<std::size_t>(k)],
                active[static_cast<std::size_t>(l)]);
    }
  return out;
}

std::pair<std::vector<int>, std::vector<int>>
choose_active_space(int n_orbitals, int n_electrons, int active_electrons,
                    int active_orbitals) {
  require(active_electrons >= 0 && active_electrons <= n_electrons &&
              (n_electrons - active_electrons) % 2 == 0,
          ErrorKind::InvalidArgument,
          "frozen electrons must fill whole orbitals");
  const int n_core = (n_electrons - active_electrons) / 2;
  require(active_orbitals >= 0 && n_core + active_orbitals <= n_orbitals,
          ErrorKind::InvalidArgument, "active space exceeds the orbital count");
  require(active_electrons <= 2 * active_orbitals, ErrorKind::InvalidArgument,
          "too many active electrons for the active orbitals");
  std::vector<int> core(static_cast<std::size_t>(n_core));
  std::vector<int> active(static_cast<std::size_t>(active_orbitals));
  for (int i = 0; i < n_core; ++i)
    core[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < active_orbitals; ++i)
    active[static_cast<std::size_t>(i)] = n_core + i;
  return {core, active};
}

SpinOrbitalIntegrals spin_orbital_expand(const ActiveSpaceProblem &problem) {
  const auto n = static_cast<std::size_t>(problem.n_spatial);
  const std::size_t ns = 2 * n;
  SpinOrbitalIntegrals out;
  out.h = MatrixXd::Zero(idx(ns), idx(ns));
  out.g = Tensor4(ns);
  for (std::size_t p = 0; p < ns; ++p)
    for (std::size_t q = 0; q < ns; ++q)
      if (p / n == q / n)
        out.h(idx(p), idx(q)) = problem.h1(idx(p % n), idx(q % n));
  for (std::size_t p = 0; p < ns; ++p)
    for (std::size_t q = 0; q < ns; ++q)
      for (std::size_t r = 0; r < ns; ++r)
        for (std::size_t s = 0; s < ns; ++s)
          if (p / n == r / n && q / n == s / n)
            out.g(p, q, r, s) = problem.h2(p % n, q % n, r % n, s % n);
  return out;
}

ActiveSpaceProblem full_space_problem(const IntegralSet &ints,
                                      const SCFResult &scf, int n_electrons) {
  const auto n = static_cast<int>(scf.mo_coefficients.cols());
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    all[static_cast<std::size_t>(i)] = i;
  const auto mo = mo_transform(ints, scf.mo_coefficients, all);
  return active_space_reduce(mo.h1, mo.h2, {}, all, n_electrons / 2,
                             n_electrons / 2, ints.e_nuc);
}

} // namespace qve
