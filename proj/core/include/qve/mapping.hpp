#pragma once

// Fermion-to-qubit encodings (Jordan-Wigner, parity, Bravyi-Kitaev), parity
// two-qubit tapering and mapping statistics.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qve/fermion.hpp"
#include "qve/pauli.hpp"
#include "qve/scf.hpp"

namespace qve {

enum class Mapper { JordanWigner, Parity, BravyiKitaev };

Mapper parse_mapper(std::string_view name);
std::string to_string(Mapper mapper);

/// Binary encoding matrix: qubit q stores the parity of the modes whose bits
/// are set in row q.
///   JW      identity
///   parity  row q = modes 0..q (inclusive cumulative parity)
///   BK      Fenwick tree of the next power of two, truncated to n
std::vector<std::uint64_t> encoding_matrix(Mapper mapper, int n_modes);

/// Qubit basis state encoding an occupation-number state.
std::uint64_t encode_occupation(Mapper mapper, const FockState &occupation);

PauliSum map_operator(const FermionOperator &op, Mapper mapper);
PauliSum jordan_wigner(const FermionOperator &op);
PauliSum parity_map(const FermionOperator &op);
PauliSum bravyi_kitaev(const FermionOperator &op);

/// Removes qubits n-1 and 2n-1 of a parity-mapped operator on 2n qubits
/// (blocked spin ordering), substituting their fixed Z eigenvalues
/// (-1)^{n_alpha} and (-1)^{n_alpha + n_beta}.
PauliSum taper_two_qubits(const PauliSum &h, int n_alpha, int n_beta);

/// Parity encoding of `occupation` with the two symmetry qubits removed.
std::uint64_t tapered_parity_state(const FockState &occupation);

struct MappingStats {
  int n_qubits = 0;
  int n_pauli_terms = 0; // identity included
  double avg_weight = 0.0; // over all terms, identity as weight 0
};

MappingStats mapping_stats(const PauliSum &h);

/// Problem -> qubit Hamiltonian including the constant offset.
PauliSum qubit_hamiltonian(const ActiveSpaceProblem &problem, Mapper mapper,
                           bool taper);

} // namespace qve
