#include "qve/mapping.hpp"

#include <bit>
#include <map>

#include "qve/error.hpp"

namespace qve {

namespace {

std::uint64_t low_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

std::vector<std::uint64_t> fenwick_matrix(int n) {
  int size = 1;
  while (size < n)
    size *= 2;
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(size), 0);
  rows[0] = 1;
  for (int k = 1; k < size; k *= 2) {
    // [[B, 0], [A, B]] with A zero except its last row of ones.
    for (int q = 0; q < k; ++q)
      rows[static_cast<std::size_t>(k + q)] = rows[static_cast<std::size_t>(q)] << k;
    rows[static_cast<std::size_t>(2 * k - 1)] |= low_mask(k);
  }
  rows.resize(static_cast<std::size_t>(n));
  for (auto &r : rows)
    r &= low_mask(n);
  return rows;
}

// Inverse over GF(2) of a lower-triangular matrix with unit diagonal.
std::vector<std::uint64_t> invert_unit_lower(const std::vector<std::uint64_t> &rows) {
  const auto n = rows.size();
  std::vector<std::uint64_t> inv(n, 0);
  for (std::size_t q = 0; q < n; ++q) {
    // b_q = n_q + sum_{j<q, rows[q]_j} n_j  =>  n_q = b_q + sum_j n_j.
    std::uint64_t r = std::uint64_t{1} << q;
    std::uint64_t lower = rows[q] & ~(std::uint64_t{1} << q);
    while (lower) {
      const int j = std::countr_zero(lower);
      r ^= inv[static_cast<std::size_t>(j)];
      lower &= lower - 1;
    }
    inv[q] = r;
  }
  return inv;
}

struct LadderImages {
  std::vector<PauliSum> annihilation;
  std::vector<PauliSum> creation;
};

LadderImages ladder_images(Mapper mapper, int n) {
  const auto beta = encoding_matrix(mapper, n);
  const auto inv = invert_unit_lower(beta);
  LadderImages out;
  std::uint64_t parity_below = 0;
  for (int j = 0; j < n; ++j) {
    std::uint64_t update = 0;
    for (int q = 0; q < n; ++q)
      if ((beta[static_cast<std::size_t>(q)] >> j) & 1U)
        update |= std::uint64_t{1} << q;
    const std::uint64_t occupation = inv[static_cast<std::size_t>(j)];
    // a_j = X_update Z_parity (I - Z_occupation)/2
    const PauliSum flip(n, {PauliTerm{update, 0, 1.0}});
    const PauliSum sign(n, {PauliTerm{0, parity_below, 1.0}});
    const PauliSum project(n, {PauliTerm{0, 0, 0.5}, PauliTerm{0, occupation, -0.5}});
    PauliSum a = flip * sign * project;
    PauliSum adag(n);
    for (const auto &t : a.term_list())
      adag.add({t.x, t.z, std::conj(t.coefficient)});
    out.annihilation.push_back(std::move(a));
    out.creation.push_back(std::move(adag));
    parity_below ^= occupation;
  }
  return out;
}

} // namespace

Mapper parse_mapper(std::string_view name) {
  if (name == "jw" || name == "jordan-wigner")
    return Mapper::JordanWigner;
  if (name == "parity")
    return Mapper::Parity;
  if (name == "bk" || name == "bravyi-kitaev")
    return Mapper::BravyiKitaev;
  fail(ErrorKind::InvalidArgument, "unknown mapper '" + std::string(name) + "'");
}

std::string to_string(Mapper mapper) {
  switch (mapper) {
  case Mapper::JordanWigner:
    return "jw";
  case Mapper::Parity:
    return "parity";
  case Mapper::BravyiKitaev:
    return "bk";
  }
  return "?";
}

std::vector<std::uint64_t> encoding_matrix(Mapper mapper, int n) {
  require(n >= 0 && n <= 64, ErrorKind::ResourceLimit,
          "at most 64 modes are supported");
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
  switch (mapper) {
  case Mapper::JordanWigner:
    for (int q = 0; q < n; ++q)
      rows[static_cast<std::size_t>(q)] = std::uint64_t{1} << q;
    break;
  case Mapper::Parity:
    for (int q = 0; q < n; ++q)
      rows[static_cast<std::size_t>(q)] = low_mask(q + 1);
    break;
  case Mapper::BravyiKitaev:
    rows = fenwick_matrix(n);
    break;
  }
  return rows;
}

std::uint64_t encode_occupation(Mapper mapper, const FockState &occupation) {
  const auto beta = encoding_matrix(mapper, occupation.n_modes);
  std::uint64_t out = 0;
  for (std::size_t q = 0; q < beta.size(); ++q)
    if (std::popcount(beta[q] & occupation.bits) % 2)
      out |= std::uint64_t{1} << q;
  return out;
}

PauliSum map_operator(const FermionOperator &op, Mapper mapper) {
  const int n = op.n_modes();
  const auto images = ladder_images(mapper, n);
  PauliSum out(n);
  for (const auto &[factors, c] : op.terms()) {
    PauliSum product = PauliSum::identity(n, c);
    for (const auto &f : factors)
      product = product * (f.creation ? images.creation : images.annihilation)
                              [static_cast<std::size_t>(f.mode)];
    out += product;
  }
  return out;
}

PauliSum jordan_wigner(const FermionOperator &op) {
  return map_operator(op, Mapper::JordanWigner);
}
PauliSum parity_map(const FermionOperator &op) {
  return map_operator(op, Mapper::Parity);
}
PauliSum bravyi_kitaev(const FermionOperator &op) {
  return map_operator(op, Mapper::BravyiKitaev);
}

namespace {

// Removes bit positions `lo` < `hi` from a mask.
std::uint64_t drop_bits(std::uint64_t v, int lo, int hi) {
  const auto squeeze = [](std::uint64_t w, int pos) {
    const std::uint64_t below = w & low_mask(pos);
    return below | ((w >> (pos + 1)) << pos);
  };
  return squeeze(squeeze(v, hi), lo);
}

} // namespace

PauliSum taper_two_qubits(const PauliSum &h, int n_alpha, int n_beta) {
  require(h.n_qubits() >= 2 && h.n_qubits() % 2 == 0, ErrorKind::InvalidArgument,
          "tapering needs an even number of qubits");
  const int n = h.n_qubits() / 2;
  const int qa = n - 1;
  const int qb = 2 * n - 1;
  const double ea = n_alpha % 2 ? -1.0 : 1.0;
  const double eb = (n_alpha + n_beta) % 2 ? -1.0 : 1.0;
  PauliSum out(h.n_qubits() - 2);
  for (const auto &t : h.term_list()) {
    if (((t.x >> qa) & 1U) || ((t.x >> qb) & 1U))
      fail(ErrorKind::SymmetryViolation,
           "term " + t.label(h.n_qubits()) +
               " acts with X/Y on a symmetry qubit; operator does not conserve "
               "the spin-sector particle numbers");
    Complex c = t.coefficient;
    if ((t.z >> qa) & 1U)
      c *= ea;
    if ((t.z >> qb) & 1U)
      c *= eb;
    out.add({drop_bits(t.x, qa, qb), drop_bits(t.z, qa, qb), c});
  }
  return out;
}

std::uint64_t tapered_parity_state(const FockState &occupation) {
  require(occupation.n_modes % 2 == 0 && occupation.n_modes >= 2,
          ErrorKind::InvalidArgument, "tapering needs an even mode count");
  const int n = occupation.n_modes / 2;
  return drop_bits(encode_occupation(Mapper::Parity, occupation), n - 1, 2 * n - 1);
}

MappingStats mapping_stats(const PauliSum &h) {
  MappingStats s;
  s.n_qubits = h.n_qubits();
  s.n_pauli_terms = static_cast<int>(h.size());
  // The identity string counts as a term of weight zero.
  long total = 0;
  for (const auto &t : h.term_list())
    total += t.weight();
  s.avg_weight = h.size() ? static_cast<double>(total) / static_cast<double>(h.size()) : 0.0;
  return s;
}

PauliSum qubit_hamiltonian(const ActiveSpaceProblem &problem, Mapper mapper,
                           bool taper) {
  require(!taper || mapper == Mapper::Parity, ErrorKind::InvalidCombination,
          "two-qubit tapering requires the parity mapper");
  const auto so = spin_orbital_expand(problem);
  const auto h = build_hamiltonian(so.h, so.g, problem.e_offset);
  PauliSum mapped = map_operator(h, mapper);
  if (taper)
    mapped = taper_two_qubits(mapped, problem.n_alpha, problem.n_beta);
  return mapped;
}

} // namespace qve
