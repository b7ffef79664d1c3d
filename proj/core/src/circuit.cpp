#include "qve/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

#include "qve/error.hpp"
#include "qve/random.hpp"

namespace qve {

namespace {

constexpr double kPi = std::numbers::pi;
using Index = Eigen::Index;

Index ix(std::uint64_t i) { return static_cast<Index>(i); }

} // namespace

std::string to_string(GateKind kind) {
  switch (kind) {
  case GateKind::X:
    return "x";
  case GateKind::H:
    return "h";
  case GateKind::SqrtX:
    return "sx";
  case GateKind::SqrtXdg:
    return "sxdg";
  case GateKind::RX:
    return "rx";
  case GateKind::RY:
    return "ry";
  case GateKind::RZ:
    return "rz";
  case GateKind::CX:
    return "cx";
  case GateKind::CZ:
    return "cz";
  case GateKind::SWAP:
    return "swap";
  }
  return "?";
}

bool is_rotation(GateKind kind) {
  return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

int arity(GateKind kind) {
  return kind == GateKind::CX || kind == GateKind::CZ || kind == GateKind::SWAP ? 2 : 1;
}

double Angle::resolve(std::span<const double> theta) const {
  if (parameter < 0)
    return offset;
  if (static_cast<std::size_t>(parameter) >= theta.size())
    fail(ErrorKind::InvalidArgument,
         "unbound circuit parameter " + std::to_string(parameter));
  return offset + scale * theta[static_cast<std::size_t>(parameter)];
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
  require(n_qubits >= 0 && n_qubits <= 30, ErrorKind::ResourceLimit,
          "circuits support at most 30 qubits");
}

int Circuit::add_parameter(std::string name) {
  parameter_names_.push_back(std::move(name));
  return n_parameters() - 1;
}

void Circuit::add(const Gate &gate) {
  const int k = gate.arity();
  for (int i = 0; i < k; ++i)
    require(gate.qubits[static_cast<std::size_t>(i)] >= 0 &&
                gate.qubits[static_cast<std::size_t>(i)] < n_qubits_,
            ErrorKind::InvalidArgument, "gate qubit out of range");
  if (k == 2)
    require(gate.qubits[0] != gate.qubits[1], ErrorKind::InvalidArgument,
            "two-qubit gate needs distinct qubits");
  if (is_rotation(gate.kind) && gate.angle.parameter >= 0)
    require(gate.angle.parameter < n_parameters(), ErrorKind::InvalidArgument,
            "gate refers to an undeclared parameter");
  gates_.push_back(gate);
  if (k == 1)
    gates_.back().qubits[1] = -1;
}

Circuit &Circuit::push(GateKind kind, int a, int b, Angle angle) {
  add(Gate{kind, {a, b}, angle});
  return *this;
}

void Circuit::append(const Circuit &other) {
  require(other.n_qubits_ == n_qubits_, ErrorKind::InvalidArgument,
          "circuit width mismatch");
  for (const auto &g : other.gates_)
    add(g);
}

Circuit Circuit::inverse() const {
  Circuit out(n_qubits_);
  out.parameter_names_ = parameter_names_;
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    Gate g = *it;
    switch (g.kind) {
    case GateKind::SqrtX:
      g.kind = GateKind::SqrtXdg;
      break;
    case GateKind::SqrtXdg:
      g.kind = GateKind::SqrtX;
      break;
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
      g.angle = g.angle.negated();
      break;
    default:
      break; // self-inverse
    }
    out.gates_.push_back(g);
  }
  return out;
}

Eigen::Matrix2cd single_qubit_matrix(GateKind kind, double angle) {
  using C = Complex;
  const C i{0.0, 1.0};
  Eigen::Matrix2cd m;
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  switch (kind) {
  case GateKind::X:
    m << 0, 1, 1, 0;
    break;
  case GateKind::H:
    m << 1, 1, 1, -1;
    m /= std::sqrt(2.0);
    break;
  case GateKind::SqrtX:
    m << C(0.5, 0.5), C(0.5, -0.5), C(0.5, -0.5), C(0.5, 0.5);
    break;
  case GateKind::SqrtXdg:
    m << C(0.5, -0.5), C(0.5, 0.5), C(0.5, 0.5), C(0.5, -0.5);
    break;
  case GateKind::RX:
    m << c, -i * s, -i * s, c;
    break;
  case GateKind::RY:
    m << c, -s, s, c;
    break;
  case GateKind::RZ:
    m << std::exp(-i * (angle / 2)), 0, 0, std::exp(i * (angle / 2));
    break;
  default:
    fail(ErrorKind::InvalidArgument, "not a single-qubit gate");
  }
  return m;
}

namespace {

void apply_1q(StateVector &psi, int q, const Eigen::Matrix2cd &m) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  const auto dim = static_cast<std::uint64_t>(psi.size());
  for (std::uint64_t i0 = 0; i0 < dim; ++i0) {
    if (i0 & bit)
      continue;
    const std::uint64_t i1 = i0 | bit;
    const Complex a = psi(ix(i0)), b = psi(ix(i1));
    psi(ix(i0)) = m(0, 0) * a + m(0, 1) * b;
    psi(ix(i1)) = m(1, 0) * a + m(1, 1) * b;
  }
}

// Pauli error: 1 = X, 2 = Y, 3 = Z.
void apply_pauli(StateVector &psi, int q, int which) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  const auto dim = static_cast<std::uint64_t>(psi.size());
  const Complex i{0.0, 1.0};
  for (std::uint64_t i0 = 0; i0 < dim; ++i0) {
    if (i0 & bit)
      continue;
    const std::uint64_t i1 = i0 | bit;
    const Complex a = psi(ix(i0)), b = psi(ix(i1));
    switch (which) {
    case 1:
      psi(ix(i0)) = b;
      psi(ix(i1)) = a;
      break;
    case 2:
      psi(ix(i0)) = -i * b;
      psi(ix(i1)) = i * a;
      break;
    case 3:
      psi(ix(i1)) = -b;
      break;
    default:
      break;
    }
  }
}

} // namespace

namespace {

// Gate with its angle resolved and its 2x2 matrix precomputed.
struct BoundGate {
  GateKind kind;
  int a;
  int b;
  Eigen::Matrix2cd m;
};

BoundGate bind(const Gate &g, std::span<const double> theta) {
  BoundGate out{g.kind, g.qubits[0], g.qubits[1], Eigen::Matrix2cd::Identity()};
  if (g.arity() == 1)
    out.m = single_qubit_matrix(g.kind, is_rotation(g.kind) ? g.angle.resolve(theta) : 0.0);
  return out;
}

std::vector<BoundGate> bind_all(std::span<const Gate> gates, std::span<const double> theta) {
  std::vector<BoundGate> out;
  out.reserve(gates.size());
  for (const auto &g : gates)
    out.push_back(bind(g, theta));
  return out;
}

void apply_bound(StateVector &psi, const BoundGate &g) {
  const auto dim = static_cast<std::uint64_t>(psi.size());
  switch (g.kind) {
  case GateKind::CX: {
    const std::uint64_t c = std::uint64_t{1} << g.a;
    const std::uint64_t t = std::uint64_t{1} << g.b;
    for (std::uint64_t i = 0; i < dim; ++i)
      if ((i & c) && !(i & t))
        std::swap(psi(ix(i)), psi(ix(i | t)));
    return;
  }
  case GateKind::CZ: {
    const std::uint64_t both = (std::uint64_t{1} << g.a) | (std::uint64_t{1} << g.b);
    for (std::uint64_t i = 0; i < dim; ++i)
      if ((i & both) == both)
        psi(ix(i)) = -psi(ix(i));
    return;
  }
  case GateKind::SWAP: {
    const std::uint64_t a = std::uint64_t{1} << g.a;
    const std::uint64_t b = std::uint64_t{1} << g.b;
    for (std::uint64_t i = 0; i < dim; ++i)
      if ((i & a) && !(i & b))
        std::swap(psi(ix(i)), psi(ix((i ^ a) | b)));
    return;
  }
  default:
    apply_1q(psi, g.a, g.m);
  }
}

} // namespace

void apply_gate(StateVector &psi, const Gate &g, std::span<const double> theta) {
  apply_bound(psi, bind(g, theta));
}

StateVector zero_state(int n_qubits) {
  StateVector psi = StateVector::Zero(Index{1} << n_qubits);
  psi(0) = 1.0;
  return psi;
}

StateVector run_circuit(const Circuit &circuit, std::span<const double> theta,
                        const std::optional<StateVector> &initial) {
  if (static_cast<int>(theta.size()) < circuit.n_parameters())
    fail(ErrorKind::InvalidArgument,
         "circuit has " + std::to_string(circuit.n_parameters()) +
             " parameters but " + std::to_string(theta.size()) + " are bound");
  StateVector psi = initial ? *initial : zero_state(circuit.n_qubits());
  require(psi.size() == (Index{1} << circuit.n_qubits()), ErrorKind::InvalidArgument,
          "initial state dimension mismatch");
  for (const auto &g : bind_all(circuit.gates(), theta))
    apply_bound(psi, g);
  return psi;
}

Eigen::MatrixXcd circuit_unitary(const Circuit &circuit,
                                 std::span<const double> theta) {
  const Index dim = Index{1} << circuit.n_qubits();
  Eigen::MatrixXcd u(dim, dim);
  for (Index k = 0; k < dim; ++k) {
    StateVector e = StateVector::Zero(dim);
    e(k) = 1.0;
    u.col(k) = run_circuit(circuit, theta, e);
  }
  return u;
}

void NoiseModel::validate() const {
  for (double p : {p1, p2, readout01, readout10})
    require(p >= 0.0 && p <= 1.0, ErrorKind::InvalidArgument,
            "noise probabilities must lie in [0, 1]");
}

NoiseModel parse_noise_config(std::string_view text) {
  NoiseModel m;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::replace(line.begin(), line.end(), '=', ' ');
    std::replace(line.begin(), line.end(), ':', ' ');
    std::istringstream ls(line);
    std::string key;
    double v;
    if (!(ls >> key))
      continue;
    if (!(ls >> v))
      fail(ErrorKind::Parse, "noise config line " + std::to_string(lineno) +
                                 ": expected '<key> <value>'");
    if (key == "p1")
      m.p1 = v;
    else if (key == "p2")
      m.p2 = v;
    else if (key == "readout01")
      m.readout01 = v;
    else if (key == "readout10")
      m.readout10 = v;
    else
      fail(ErrorKind::Parse, "noise config line " + std::to_string(lineno) +
                                 ": unknown key '" + key + "'");
  }
  m.validate();
  return m;
}

std::vector<std::vector<PauliTerm>> group_commuting_terms(const PauliSum &h) {
  std::vector<std::vector<PauliTerm>> groups;
  for (const auto &t : h.term_list()) {
    if (t.is_identity())
      continue;
    bool placed = false;
    for (auto &g : groups) {
      if (std::all_of(g.begin(), g.end(),
                      [&](const PauliTerm &o) { return qubitwise_commutes(t, o); })) {
        g.push_back(t);
        placed = true;
        break;
      }
    }
    if (!placed)
      groups.push_back({t});
  }
  return groups;
}

namespace {

// Rotation mapping each group's local X/Y onto Z.
std::vector<Gate> measurement_basis(const std::vector<PauliTerm> &group, int n) {
  std::vector<Gate> out;
  for (int q = 0; q < n; ++q) {
    char op = 'I';
    for (const auto &t : group)
      if (t.op(q) != 'I')
        op = t.op(q);
    if (op == 'X') {
      out.push_back({GateKind::H, {q, -1}, {}});
    } else if (op == 'Y') {
      out.push_back({GateKind::RZ, {q, -1}, Angle::literal(-kPi / 2)});
      out.push_back({GateKind::H, {q, -1}, {}});
    }
  }
  return out;
}

// Per-outcome energy of the group's terms.
std::vector<double> outcome_values(const std::vector<PauliTerm> &group, int n) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<double> v(dim, 0.0);
  for (const auto &t : group) {
    const std::uint64_t support = t.x | t.z;
    const double c = t.coefficient.real();
    for (std::uint64_t k = 0; k < dim; ++k)
      v[k] += std::popcount(k & support) % 2 ? -c : c;
  }
  return v;
}

std::vector<double> cumulative(const StateVector &psi) {
  std::vector<double> cdf(static_cast<std::size_t>(psi.size()));
  double acc = 0.0;
  for (Index k = 0; k < psi.size(); ++k) {
    acc += std::norm(psi(k));
    cdf[static_cast<std::size_t>(k)] = acc;
  }
  return cdf;
}

std::uint64_t sample(const std::vector<double> &cdf, double u) {
  const double target = u * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  const auto k = static_cast<std::uint64_t>(it - cdf.begin());
  return std::min<std::uint64_t>(k, cdf.size() - 1);
}

std::uint64_t sample_state(const StateVector &psi, double u) {
  const double target = u;
  double acc = 0.0;
  for (Index k = 0; k < psi.size(); ++k) {
    acc += std::norm(psi(k));
    if (target < acc)
      return static_cast<std::uint64_t>(k);
  }
  return static_cast<std::uint64_t>(psi.size() - 1);
}

// Uniformly random non-identity Pauli on the gate's qubits.
void apply_error(StateVector &psi, const BoundGate &g, Engine &rng) {
  if (arity(g.kind) == 1) {
    apply_pauli(psi, g.a, 1 + static_cast<int>(uniform_index(rng, 3)));
  } else {
    const int which = 1 + static_cast<int>(uniform_index(rng, 15));
    apply_pauli(psi, g.a, which % 4);
    apply_pauli(psi, g.b, which / 4);
  }
}

enum Stream : std::uint64_t { kOutcome = 1, kTrajectory = 2, kReadout = 3 };

} // namespace

EstimatorResult estimate(const Circuit &circuit, std::span<const double> theta,
                         const PauliSum &h, long shots, std::uint64_t seed,
                         const std::optional<NoiseModel> &noise) {
  require(h.n_qubits() == circuit.n_qubits(), ErrorKind::InvalidArgument,
          "observable and circuit widths differ");
  require(shots >= 0, ErrorKind::InvalidArgument, "shot count must be non-negative");
  if (noise)
    noise->validate();
  if (shots == 0 && noise)
    fail(ErrorKind::InvalidCombination, "exact mode cannot be combined with noise");

  const int n = circuit.n_qubits();
  const auto bound = bind_all(circuit.gates(), theta);
  StateVector psi = zero_state(n);
  for (const auto &g : bound)
    apply_bound(psi, g);
  EstimatorResult result{0.0, 0.0, shots, seed};
  if (shots == 0) {
    result.mean = expectation_exact(h, psi);
    return result;
  }

  result.mean = h.constant().real();
  double variance = 0.0;
  const auto groups = group_commuting_terms(h);
  const bool gate_noise = noise && noise->has_gate_noise();
  const bool readout_noise = noise && noise->has_readout_noise();
  const auto error_rate = [&](const BoundGate &g) {
    return arity(g.kind) == 1 ? noise->p1 : noise->p2;
  };

  // States after each gate prefix, shared by every group.
  std::vector<StateVector> prefix;
  if (gate_noise) {
    prefix.reserve(bound.size() + 1);
    prefix.push_back(zero_state(n));
    for (const auto &g : bound) {
      prefix.push_back(prefix.back());
      apply_bound(prefix.back(), g);
    }
  }

  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto basis = bind_all(measurement_basis(groups[gi], n), theta);
    const auto values = outcome_values(groups[gi], n);
    StateVector ideal = psi;
    for (const auto &g : basis)
      apply_bound(ideal, g);
    const auto cdf = cumulative(ideal);

    Engine outcome_rng = make_engine(derive_seed(seed, gi, kOutcome));
    Engine trajectory_rng = make_engine(derive_seed(seed, gi, kTrajectory));
    Engine readout_rng = make_engine(derive_seed(seed, gi, kReadout));

    // Full gate list of this group's experiment and its survival products.
    std::vector<BoundGate> gates;
    std::vector<double> survival{1.0};
    std::vector<StateVector> basis_prefix;
    if (gate_noise) {
      gates = bound;
      gates.insert(gates.end(), basis.begin(), basis.end());
      for (const auto &g : gates)
        survival.push_back(survival.back() * (1.0 - error_rate(g)));
      basis_prefix.push_back(prefix.back());
      for (const auto &g : basis) {
        basis_prefix.push_back(basis_prefix.back());
        apply_bound(basis_prefix.back(), g);
      }
    }
    // State after the first `k` gates of this group's experiment.
    const auto after = [&](std::size_t k) -> const StateVector & {
      return k < prefix.size() ? prefix[k] : basis_prefix[k - bound.size()];
    };

    double sum = 0.0, sum_sq = 0.0;
    StateVector traj;
    for (long s = 0; s < shots; ++s) {
      std::uint64_t outcome;
      if (!gate_noise) {
        outcome = sample(cdf, uniform01(outcome_rng));
      } else {
        // One uniform decides whether and where the first error happens:
        // u in [S_{g+1}, S_g) means gates before g were clean and g failed.
        const double u = uniform01(trajectory_rng);
        if (u < survival.back()) {
          outcome = sample(cdf, uniform01(outcome_rng));
        } else {
          const auto first = static_cast<std::size_t>(
              std::upper_bound(survival.begin(), survival.end(), u,
                               std::greater<double>()) -
              survival.begin()) - 1;
          traj = after(first + 1);
          apply_error(traj, gates[first], trajectory_rng);
          for (std::size_t k = first + 1; k < gates.size(); ++k) {
            apply_bound(traj, gates[k]);
            if (uniform01(trajectory_rng) < error_rate(gates[k]))
              apply_error(traj, gates[k], trajectory_rng);
          }
          outcome = sample_state(traj, uniform01(outcome_rng));
        }
      }
      if (readout_noise) {
        for (int q = 0; q < n; ++q) {
          const std::uint64_t bit = std::uint64_t{1} << q;
          const double flip = (outcome & bit) ? noise->readout10 : noise->readout01;
          if (uniform01(readout_rng) < flip)
            outcome ^= bit;
        }
      }
      const double v = values[outcome];
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / static_cast<double>(shots);
    result.mean += mean;
    if (shots > 1) {
      const double var = std::max(0.0, (sum_sq - shots * mean * mean) /
                                           static_cast<double>(shots - 1));
      variance += var / static_cast<double>(shots);
    }
  }
  result.std_error = std::sqrt(variance);
  return result;
}

Coupling linear_coupling(int n) {
  Coupling c;
  for (int q = 0; q + 1 < n; ++q)
    c.push_back({q, q + 1});
  return c;
}

Coupling full_coupling(int n) {
  Coupling c;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      c.push_back({a, b});
  return c;
}

namespace {

class Lowering {
public:
  explicit Lowering(Circuit &out) : out_(out) {}

  void sx(int q) { out_.sx(q); }
  void rz(int q, Angle a) { out_.rz(q, a); }
  void h(int q) {
    rz(q, Angle::literal(kPi / 2));
    sx(q);
    rz(q, Angle::literal(kPi / 2));
  }
  // U(theta, phi, lambda) ~ RZ(phi+pi) SX RZ(theta+pi) SX RZ(lambda).
  void u(int q, Angle theta, double phi, double lambda) {
    if (lambda != 0.0)
      rz(q, Angle::literal(lambda));
    sx(q);
    rz(q, theta.shifted(kPi));
    sx(q);
    rz(q, Angle::literal(phi + kPi));
  }
  void cx(int c, int t) {
    h(t);
    out_.cz(c, t);
    h(t);
  }

  void lower(const Gate &g) {
    const int a = g.qubits[0], b = g.qubits[1];
    switch (g.kind) {
    case GateKind::X:
      sx(a);
      sx(a);
      break;
    case GateKind::H:
      h(a);
      break;
    case GateKind::SqrtX:
      sx(a);
      break;
    case GateKind::SqrtXdg:
      rz(a, Angle::literal(kPi));
      sx(a);
      rz(a, Angle::literal(kPi));
      break;
    case GateKind::RX:
      u(a, g.angle, -kPi / 2, kPi / 2);
      break;
    case GateKind::RY:
      u(a, g.angle, 0.0, 0.0);
      break;
    case GateKind::RZ:
      rz(a, g.angle);
      break;
    case GateKind::CX:
      cx(a, b);
      break;
    case GateKind::CZ:
      out_.cz(a, b);
      break;
    case GateKind::SWAP:
      cx(a, b);
      cx(b, a);
      cx(a, b);
      break;
    }
  }

private:
  Circuit &out_;
};

std::vector<int> shortest_path(const std::vector<std::vector<int>> &adj, int from,
                               int to) {
  std::vector<int> prev(adj.size(), -1);
  std::deque<int> queue{from};
  prev[static_cast<std::size_t>(from)] = from;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v == to)
      break;
    for (int w : adj[static_cast<std::size_t>(v)])
      if (prev[static_cast<std::size_t>(w)] < 0) {
        prev[static_cast<std::size_t>(w)] = v;
        queue.push_back(w);
      }
  }
  std::vector<int> path;
  for (int v = to; v != from; v = prev[static_cast<std::size_t>(v)])
    path.push_back(v);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

} // namespace

TranspileResult transpile(const Circuit &circuit, const Coupling &coupling) {
  const int n = circuit.n_qubits();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : coupling) {
    require(a >= 0 && b >= 0 && a < n && b < n && a != b,
            ErrorKind::InvalidArgument, "coupling edge out of range");
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto &nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  if (n > 1) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::deque<int> queue{0};
    seen[0] = true;
    int reached = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : adj[static_cast<std::size_t>(v)])
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          ++reached;
          queue.push_back(w);
        }
    }
    require(reached == n, ErrorKind::InvalidArgument, "coupling map is disconnected");
  }

  TranspileResult result;
  result.circuit = Circuit(n);
  for (const auto &name : circuit.parameter_names())
    result.circuit.add_parameter(name);
  Lowering low(result.circuit);
  for (const auto &g : circuit.gates()) {
    if (g.arity() == 1) {
      low.lower(g);
      continue;
    }
    const int a = g.qubits[0], b = g.qubits[1];
    const auto &nbrs = adj[static_cast<std::size_t>(a)];
    if (std::binary_search(nbrs.begin(), nbrs.end(), b)) {
      low.lower(g);
      continue;
    }
    // Walk `a` toward `b`, apply, walk back.
    const auto path = shortest_path(adj, a, b);
    const std::size_t hops = path.size() - 2;
    for (std::size_t k = 0; k < hops; ++k)
      low.lower({GateKind::SWAP, {path[k], path[k + 1]}, {}});
    Gate moved = g;
    moved.qubits = {path[hops], b};
    low.lower(moved);
    for (std::size_t k = hops; k-- > 0;)
      low.lower({GateKind::SWAP, {path[k], path[k + 1]}, {}});
  }
  const auto stats = circuit_stats(result.circuit);
  result.depth = stats.depth;
  result.two_qubit_count = stats.two_qubit_count();
  return result;
}

int CircuitStats::count(GateKind kind) const {
  const auto it = counts.find(kind);
  return it == counts.end() ? 0 : it->second;
}

int CircuitStats::two_qubit_count() const {
  return count(GateKind::CX) + count(GateKind::CZ) + count(GateKind::SWAP);
}

int CircuitStats::size() const {
  int s = 0;
  for (const auto &[k, c] : counts)
    s += c;
  return s;
}

CircuitStats circuit_stats(const Circuit &circuit) {
  CircuitStats s;
  s.parameters = circuit.n_parameters();
  std::vector<int> level(static_cast<std::size_t>(circuit.n_qubits()), 0);
  for (const auto &g : circuit.gates()) {
    ++s.counts[g.kind];
    int d = level[static_cast<std::size_t>(g.qubits[0])];
    if (g.arity() == 2)
      d = std::max(d, level[static_cast<std::size_t>(g.qubits[1])]);
    ++d;
    level[static_cast<std::size_t>(g.qubits[0])] = d;
    if (g.arity() == 2)
      level[static_cast<std::size_t>(g.qubits[1])] = d;
    s.depth = std::max(s.depth, d);
  }
  return s;
}

} // namespace qve
