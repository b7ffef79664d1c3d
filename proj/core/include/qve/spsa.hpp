#pragma once

// Simultaneous perturbation stochastic approximation with calibrated gains.

#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "qve/circuit.hpp"

namespace qve {

struct SPSAConfig {
  double alpha = 0.602;
  double gamma = 0.101;
  double A = 0.0;
  double c = 0.2;
  double a = 0.0; // 0: set by calibration
  int maxiter = 400;
  int calibration_evals = 50;
  double target_first_step = 2.0 * std::numbers::pi / 10.0;

  void validate() const;
  /// Total cost evaluations of minimize().
  long total_evaluations() const { return calibration_evals + 3L * maxiter + 1; }
};

/// Cost evaluated at theta; `eval_index` numbers the calls of one run from 0
/// so the callee can derive an independent random stream per call.
using CostFunction =
    std::function<EstimatorResult(std::span<const double> theta, std::uint64_t eval_index)>;

/// Wraps a deterministic scalar function.
CostFunction exact_cost(std::function<double(std::span<const double>)> f);

struct Gains {
  double a_k;
  double c_k;
};

/// a_k = a / (A + k)^alpha, c_k = c / k^gamma for k >= 1.
Gains gain_sequences(const SPSAConfig &cfg, int k);

/// Two-sided estimate g_i = (f(theta + c delta) - f(theta - c delta)) / (2 c delta_i).
/// Uses eval indices `first_index` and `first_index + 1`.
std::vector<double> spsa_gradient(const CostFunction &cost, std::span<const double> theta,
                                  double c_k, std::span<const int> delta,
                                  std::uint64_t first_index = 0);

/// a = target_first_step * (A + 1)^alpha / mean |(f+ - f-) / (2 c_1)| over
/// calibration_evals / 2 random perturbations of theta0.
double calibrate(const CostFunction &cost, std::span<const double> theta0,
                 const SPSAConfig &cfg, std::uint64_t seed);

struct IterationRecord {
  int k = 0;
  std::vector<double> theta; // after the update of iteration k
  EstimatorResult energy;    // tracking evaluation at theta
  long function_evals = 0;   // calibration_evals + 3k
};

struct SPSAResult {
  std::vector<double> theta; // final iterate
  EstimatorResult final_energy;
  double a = 0.0;
  long evaluations = 0;
  std::vector<IterationRecord> history;
};

using IterationCallback = std::function<void(const IterationRecord &)>;

/// Calibration, maxiter iterations of (gradient, update, tracking evaluation)
/// and one final evaluation. Deterministic for a fixed seed.
SPSAResult minimize(const CostFunction &cost, std::vector<double> theta0,
                    const SPSAConfig &cfg, std::uint64_t seed,
                    const IterationCallback &callback = {});

} // namespace qve
