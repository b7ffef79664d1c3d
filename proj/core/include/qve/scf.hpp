#pragma once

// Restricted Hartree-Fock, AO->MO transformation and active-space reduction.

#include <Eigen/Dense>

#include <vector>

#include "qve/basis.hpp"
#include "qve/tensor.hpp"

namespace qve {

struct SCFResult {
  Eigen::MatrixXd mo_coefficients; // AO x MO
  Eigen::VectorXd orbital_energies;
  double total_energy = 0.0; // includes nuclear repulsion
  Eigen::MatrixXd density;   // D = 2 C_occ C_occ^T
  bool converged = false;
  int iterations = 0;
};

struct SCFOptions {
  int max_iterations = 200;
  double energy_tolerance = 1e-10;
  double density_tolerance = 1e-8;
};

/// Closed-shell Roothaan iterations from the core-Hamiltonian guess.
/// Non-convergence is reported through SCFResult::converged, not thrown.
SCFResult run_rhf(const IntegralSet &integrals, int n_electrons,
                  const SCFOptions &options = {});

/// Symmetric orthogonalizer S^{-1/2}.
Eigen::MatrixXd symmetric_orthogonalizer(const Eigen::MatrixXd &overlap);

struct MOIntegrals {
  Eigen::MatrixXd h1;
  Tensor4 h2; // physicist <pq|rs>
};

/// Transforms core Hamiltonian and repulsion integrals to the MO columns
/// listed in `active_columns`, one index at a time.
MOIntegrals mo_transform(const IntegralSet &integrals,
                         const Eigen::MatrixXd &coefficients,
                         const std::vector<int> &active_columns);

struct ActiveSpaceProblem {
  int n_spatial = 0;
  int n_alpha = 0;
  int n_beta = 0;
  Eigen::MatrixXd h1; // spatial MO basis
  Tensor4 h2;         // physicist <pq|rs>
  double e_offset = 0.0;

  int n_spin_orbitals() const { return 2 * n_spatial; }
};

/// Freezes doubly occupied `core` orbitals into e_offset and a mean-field
/// correction of h1, and restricts to `active`.
ActiveSpaceProblem active_space_reduce(const Eigen::MatrixXd &h1_full,
                                       const Tensor4 &h2_full,
                                       const std::vector<int> &core,
                                       const std::vector<int> &active,
                                       int n_active_alpha, int n_active_beta,
                                       double e_nuc);

/// Core/active split in the usual "n electrons in m orbitals around the
/// Fermi level" sense, for a closed-shell reference with `n_electrons` in
/// `n_orbitals` orbitals. Returns {core, active}.
std::pair<std::vector<int>, std::vector<int>>
choose_active_space(int n_orbitals, int n_electrons, int active_electrons,
                    int active_orbitals);

struct SpinOrbitalIntegrals {
  Eigen::MatrixXd h;
  Tensor4 g; // physicist <pq|rs> over spin orbitals
};

/// Blocked ordering: [0, n) alpha, [n, 2n) beta.
SpinOrbitalIntegrals spin_orbital_expand(const ActiveSpaceProblem &problem);

/// Full-space problem from a converged SCF: every orbital active.
ActiveSpaceProblem full_space_problem(const IntegralSet &integrals,
                                      const SCFResult &scf, int n_electrons);

} // namespace qve
