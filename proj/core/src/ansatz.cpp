#include "qve/ansatz.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qve/error.hpp"

namespace qve {

ExcitationList excitations(int n_alpha, int n_beta, int n_spatial) {
  require(n_spatial >= 0 && n_alpha >= 0 && n_beta >= 0 && n_alpha <= n_spatial &&
              n_beta <= n_spatial,
          ErrorKind::InvalidArgument, "invalid electron or orbital count");
  const int n = n_spatial;
  std::vector<int> occ, virt;
  for (int p = 0; p < n; ++p)
    (p < n_alpha ? occ : virt).push_back(p);
  for (int p = 0; p < n; ++p)
    (p < n_beta ? occ : virt).push_back(n + p);
  const auto spin = [n](int mode) { return mode >= n ? 1 : 0; };

  ExcitationList out;
  for (int i : occ)
    for (int a : virt)
      if (spin(i) == spin(a))
        out.singles.push_back({i, a});
  for (std::size_t x = 0; x < occ.size(); ++x)
    for (std::size_t y = x + 1; y < occ.size(); ++y)
      for (std::size_t u = 0; u < virt.size(); ++u)
        for (std::size_t v = u + 1; v < virt.size(); ++v) {
          const int i = occ[x], j = occ[y], k = virt[u], l = virt[v];
          if (spin(i) + spin(j) == spin(k) + spin(l))
            out.doubles.push_back({i, j, k, l});
        }
  return out;
}

FermionOperator excitation_generator(int n_modes, const std::vector<int> &occupied,
                                     const std::vector<int> &virtuals) {
  std::vector<LadderOp> factors;
  for (int v : virtuals)
    factors.push_back(cre(v));
  for (auto it = occupied.rbegin(); it != occupied.rend(); ++it)
    factors.push_back(ann(*it));
  const auto t = FermionOperator::term(n_modes, factors);
  return t - t.adjoint();
}

Circuit pauli_evolution(int n_qubits, const PauliTerm &term, Angle theta) {
  if (std::abs(term.coefficient.real()) > 1e-12)
    fail(ErrorKind::InvalidGenerator,
         "generator term " + term.label(n_qubits) + " has a real coefficient");
  const double lambda = term.coefficient.imag();
  Circuit c(n_qubits);
  for (int p = 0; p <= theta.parameter; ++p)
    c.add_parameter("t" + std::to_string(p));

  std::vector<int> active;
  for (int q = 0; q < n_qubits; ++q)
    if (term.op(q) != 'I')
      active.push_back(q);
  if (active.empty())
    return c; // global phase only

  constexpr double half_pi = std::numbers::pi / 2;
  const auto basis_in = [&](int q) {
    if (term.op(q) == 'X')
      c.h(q);
    else if (term.op(q) == 'Y')
      c.rx(q, Angle::literal(half_pi));
  };
  const auto basis_out = [&](int q) {
    if (term.op(q) == 'X')
      c.h(q);
    else if (term.op(q) == 'Y')
      c.rx(q, Angle::literal(-half_pi));
  };

  for (int q : active)
    basis_in(q);
  for (std::size_t k = 0; k + 1 < active.size(); ++k)
    c.cx(active[k], active[k + 1]);
  c.rz(active.back(), {theta.offset * -2.0 * lambda, theta.parameter,
                       theta.scale * -2.0 * lambda});
  for (std::size_t k = active.size() - 1; k-- > 0;)
    c.cx(active[k], active[k + 1]);
  for (int q : active)
    basis_out(q);
  return c;
}

void append_generator(Circuit &circuit, const PauliSum &generator, int parameter) {
  for (const auto &t : generator.term_list()) {
    if (t.is_identity())
      continue;
    Circuit frag = pauli_evolution(circuit.n_qubits(), t, Angle::param(parameter));
    for (const auto &g : frag.gates())
      circuit.add(g);
  }
}

Circuit hf_state_circuit(const FockState &occupation, Mapper mapper, bool taper) {
  std::uint64_t bits;
  int n_qubits = occupation.n_modes;
  if (taper) {
    require(mapper == Mapper::Parity, ErrorKind::InvalidCombination,
            "tapering requires the parity mapping");
    require(occupation.n_modes % 2 == 0 && occupation.n_modes >= 2,
            ErrorKind::InvalidArgument, "tapering needs an even mode count");
    bits = tapered_parity_state(occupation);
    n_qubits -= 2;
  } else {
    bits = encode_occupation(mapper, occupation);
  }
  Circuit c(n_qubits);
  for (int q = 0; q < n_qubits; ++q)
    if ((bits >> q) & 1U)
      c.x(q);
  return c;
}

Circuit build_uccsd(int n_alpha, int n_beta, int n_spatial, Mapper mapper,
                    bool taper) {
  if (taper && mapper != Mapper::Parity)
    fail(ErrorKind::InvalidCombination, "tapering requires the parity mapping");
  const int n_modes = 2 * n_spatial;
  const FockState hf = hartree_fock_occupation(n_alpha, n_beta, n_spatial);
  Circuit c = hf_state_circuit(hf, mapper, taper);
  const auto ex = excitations(n_alpha, n_beta, n_spatial);

  const auto map_generator = [&](const FermionOperator &g) {
    PauliSum p = map_operator(g, mapper);
    if (taper)
      p = taper_two_qubits(p, n_alpha, n_beta);
    return p;
  };
  for (const auto &[i, a] : ex.singles) {
    const int k = c.add_parameter("s" + std::to_string(i) + "_" + std::to_string(a));
    append_generator(c, map_generator(excitation_generator(n_modes, {i}, {a})), k);
  }
  for (const auto &[i, j, a, b] : ex.doubles) {
    const int k = c.add_parameter("d" + std::to_string(i) + "_" + std::to_string(j) +
                                  "_" + std::to_string(a) + "_" + std::to_string(b));
    append_generator(c, map_generator(excitation_generator(n_modes, {i, j}, {a, b})),
                     k);
  }
  return c;
}

Circuit build_hea(int n_qubits, int reps) {
  require(n_qubits >= 1, ErrorKind::InvalidArgument, "HEA needs at least one qubit");
  require(reps >= 0, ErrorKind::InvalidArgument, "reps must be non-negative");
  Circuit c(n_qubits);
  for (int layer = 0; layer <= reps; ++layer) {
    if (layer > 0)
      for (int q = 0; q + 1 < n_qubits; ++q)
        c.cx(q, q + 1);
    for (int q = 0; q < n_qubits; ++q)
      c.ry(q, Angle::param(c.add_parameter("ry" + std::to_string(layer) + "_" +
                                           std::to_string(q))));
    for (int q = 0; q < n_qubits; ++q)
      c.rz(q, Angle::param(c.add_parameter("rz" + std::to_string(layer) + "_" +
                                           std::to_string(q))));
  }
  return c;
}

} // namespace qve
