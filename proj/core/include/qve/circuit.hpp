#pragma once

// Parameterized gate circuits, state-vector execution, shot-based estimation
// of Pauli sums with optional Pauli-trajectory noise, and lowering to the
// {SqrtX, RZ, CZ} basis.

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qve/pauli.hpp"

namespace qve {

enum class GateKind { X, H, SqrtX, SqrtXdg, RX, RY, RZ, CX, CZ, SWAP };

std::string to_string(GateKind kind);
bool is_rotation(GateKind kind);
int arity(GateKind kind);

/// offset + scale * theta[parameter] (parameter < 0: literal offset).
struct Angle {
  double offset = 0.0;
  int parameter = -1;
  double scale = 1.0;

  static Angle literal(double value) { return {value, -1, 1.0}; }
  static Angle param(int index, double scale = 1.0) { return {0.0, index, scale}; }

  double resolve(std::span<const double> theta) const;
  Angle negated() const { return {-offset, parameter, -scale}; }
  Angle shifted(double delta) const { return {offset + delta, parameter, scale}; }
};

struct Gate {
  GateKind kind;
  std::array<int, 2> qubits{0, -1};
  Angle angle{};

  int arity() const { return qve::arity(kind); }
};

using StateVector = Eigen::VectorXcd;

class Circuit {
public:
  Circuit() = default;
  explicit Circuit(int n_qubits);

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<Gate> &gates() const noexcept { return gates_; }
  const std::vector<std::string> &parameter_names() const noexcept {
    return parameter_names_;
  }
  int n_parameters() const noexcept {
    return static_cast<int>(parameter_names_.size());
  }

  int add_parameter(std::string name);
  void add(const Gate &gate);

  Circuit &x(int q) { return push(GateKind::X, q); }
  Circuit &h(int q) { return push(GateKind::H, q); }
  Circuit &sx(int q) { return push(GateKind::SqrtX, q); }
  Circuit &sxdg(int q) { return push(GateKind::SqrtXdg, q); }
  Circuit &rx(int q, Angle a) { return push(GateKind::RX, q, -1, a); }
  Circuit &ry(int q, Angle a) { return push(GateKind::RY, q, -1, a); }
  Circuit &rz(int q, Angle a) { return push(GateKind::RZ, q, -1, a); }
  Circuit &cx(int c, int t) { return push(GateKind::CX, c, t); }
  Circuit &cz(int a, int b) { return push(GateKind::CZ, a, b); }
  Circuit &swap(int a, int b) { return push(GateKind::SWAP, a, b); }

  /// Appends gates of `other` (same width). Parameter indices are shared, so
  /// `other` must refer to parameters of this circuit.
  void append(const Circuit &other);

  /// Reversed gate list with every gate inverted.
  Circuit inverse() const;

private:
  Circuit &push(GateKind kind, int a, int b = -1, Angle angle = {});

  int n_qubits_ = 0;
  std::vector<Gate> gates_;
  std::vector<std::string> parameter_names_;
};

/// 2x2 matrix of a bound single-qubit gate.
Eigen::Matrix2cd single_qubit_matrix(GateKind kind, double angle);

void apply_gate(StateVector &state, const Gate &gate,
                std::span<const double> theta);

StateVector zero_state(int n_qubits);

/// Applies the circuit to |0...0> (or `initial`).
StateVector run_circuit(const Circuit &circuit, std::span<const double> theta,
                        const std::optional<StateVector> &initial = std::nullopt);

/// Dense unitary of the bound circuit (column k = image of |k>).
Eigen::MatrixXcd circuit_unitary(const Circuit &circuit,
                                 std::span<const double> theta);

struct NoiseModel {
  double p1 = 0.0;        // depolarizing probability after 1-qubit gates
  double p2 = 0.0;        // after 2-qubit gates
  double readout01 = 0.0; // P(read 1 | prepared 0)
  double readout10 = 0.0; // P(read 0 | prepared 1)

  void validate() const;
  bool has_gate_noise() const { return p1 > 0.0 || p2 > 0.0; }
  bool has_readout_noise() const { return readout01 > 0.0 || readout10 > 0.0; }
};

/// `key value` or `key = value` lines with keys p1, p2, readout01, readout10.
NoiseModel parse_noise_config(std::string_view text);

struct EstimatorResult {
  double mean = 0.0;
  double std_error = 0.0;
  long shots = 0;
  std::uint64_t seed = 0;
};

/// Greedy first-fit partition of the non-identity terms into qubit-wise
/// commuting groups, in canonical term order.
std::vector<std::vector<PauliTerm>> group_commuting_terms(const PauliSum &h);

/// Energy estimate of `h` on the circuit's output state.
/// shots == 0 selects exact (noiseless) evaluation. Every commuting group
/// receives `shots` samples. With noise, each shot follows one Pauli
/// trajectory, then readout errors flip measured bits.
EstimatorResult estimate(const Circuit &circuit, std::span<const double> theta,
                         const PauliSum &h, long shots, std::uint64_t seed,
                         const std::optional<NoiseModel> &noise = std::nullopt);

using Coupling = std::vector<std::pair<int, int>>;

Coupling linear_coupling(int n_qubits);
Coupling full_coupling(int n_qubits);

struct TranspileResult {
  Circuit circuit;
  int depth = 0;
  int two_qubit_count = 0;
};

/// Lowers to {SqrtX, RZ, CZ}, routing non-adjacent pairs through SWAP chains
/// along the shortest path (lowest index first on ties); each chain is undone
/// right after its gate, so qubit labels are preserved.
TranspileResult transpile(const Circuit &circuit, const Coupling &coupling);

struct CircuitStats {
  int depth = 0;
  std::map<GateKind, int> counts;
  int parameters = 0;

  int count(GateKind kind) const;
  int two_qubit_count() const;
  int size() const;
};

CircuitStats circuit_stats(const Circuit &circuit);

} // namespace qve
