#pragma once

// Variational circuits: the hardware-efficient RY/RZ ansatz, single-step
// UCCSD, Hartree-Fock state preparation and Pauli-exponential synthesis.

#include <array>
#include <vector>

#include "qve/circuit.hpp"
#include "qve/fermion.hpp"
#include "qve/mapping.hpp"
#include "qve/pauli.hpp"

namespace qve {

/// Spin-orbital excitations out of the blocked-order HF determinant.
struct ExcitationList {
  std::vector<std::array<int, 2>> singles; // (occupied, virtual)
  std::vector<std::array<int, 4>> doubles; // (i, j occupied; k, l virtual)

  std::size_t size() const { return singles.size() + doubles.size(); }
};

/// Spin-conserving singles and doubles, each list in lexicographic order.
ExcitationList excitations(int n_alpha, int n_beta, int n_spatial);

/// T - T^dagger for one excitation (T = a+_v a_o, or a+_k a+_l a_j a_i).
FermionOperator excitation_generator(int n_modes, const std::vector<int> &occupied,
                                     const std::vector<int> &virtuals);

/// exp(i * lambda * theta * P) for a term with coefficient i*lambda.
/// Basis change onto Z, CX ladder into the last active qubit, RZ(-2 lambda theta).
Circuit pauli_evolution(int n_qubits, const PauliTerm &term, Angle theta);

/// Appends pauli_evolution of every term of an anti-Hermitian generator.
void append_generator(Circuit &circuit, const PauliSum &generator, int parameter);

/// X gates preparing the encoded occupation. With `taper`, the two symmetry
/// qubits of the parity encoding are dropped.
Circuit hf_state_circuit(const FockState &occupation, Mapper mapper, bool taper);

/// HF preparation followed by one Trotter step over all excitations
/// (singles then doubles), one parameter each.
Circuit build_uccsd(int n_alpha, int n_beta, int n_spatial, Mapper mapper,
                    bool taper);

/// reps+1 layers of RY then RZ on every qubit, separated by linear CX chains.
Circuit build_hea(int n_qubits, int reps);

} // namespace qve
