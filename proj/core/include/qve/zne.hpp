#pragma once

// Zero-noise extrapolation: global unitary folding and fits of E(lambda).

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qve/circuit.hpp"

namespace qve {

enum class FitModel { Linear, Quadratic, Exponential };

std::string to_string(FitModel model);
FitModel parse_fit_model(std::string_view name);

struct ZNEPoint {
  int fold = 1;
  EstimatorResult energy;
};

struct FitResult {
  FitModel model = FitModel::Linear;
  double e0 = 0.0;            // value at lambda = 0
  std::vector<double> params; // a, b[, c]
  double residual = 0.0;      // sum of squared residuals
  bool fallback = false;      // exponential fit replaced by the quadratic one
};

struct ZNEResult {
  double raw = 0.0;
  std::vector<ZNEPoint> points;
  std::map<FitModel, FitResult> fits;
};

/// C (C^dagger C)^((n-1)/2) for odd n >= 1.
Circuit fold_circuit(const Circuit &circuit, int n);

/// Least-squares fit of the point means. Linear a + b l, quadratic
/// a + b l + c l^2, exponential a + b exp(-c l) with c >= 0. An exponential fit
/// that does not settle at an interior c falls back to the quadratic model.
FitResult extrapolate(std::span<const ZNEPoint> points, FitModel model);
FitResult extrapolate(std::span<const double> lambdas, std::span<const double> values,
                      FitModel model);

/// Measures every fold with the same noise model; fold f uses the stream
/// derive_seed(seed, f). Fits every model that has enough points.
ZNEResult run_zne(const Circuit &circuit, std::span<const double> theta,
                  const PauliSum &h, std::span<const int> folds, long shots,
                  std::uint64_t seed, const NoiseModel &noise,
                  std::span<const FitModel> models = {});

} // namespace qve
