#include "qve/spsa.hpp"

#include <cmath>
#include <string>

#include "qve/error.hpp"
#include "qve/random.hpp"

namespace qve {

namespace {

// Stream tags for the perturbation generator.
constexpr std::uint64_t kCalibrationStream = 0xCA1;
constexpr std::uint64_t kIterationStream = 0x17E;

std::vector<int> draw_delta(Engine &rng, std::size_t n) {
  std::vector<int> d(n);
  for (auto &v : d)
    v = rademacher(rng);
  return d;
}

std::vector<double> shifted(std::span<const double> theta, std::span<const int> delta,
                            double step) {
  std::vector<double> out(theta.begin(), theta.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] += step * delta[i];
  return out;
}

} // namespace

void SPSAConfig::validate() const {
  require(alpha > 0 && gamma > 0, ErrorKind::InvalidArgument,
          "SPSA exponents must be positive");
  require(c > 0, ErrorKind::InvalidArgument, "SPSA perturbation c must be positive");
  require(A >= 0 && a >= 0, ErrorKind::InvalidArgument, "SPSA gains must be non-negative");
  require(maxiter >= 1, ErrorKind::InvalidArgument, "maxiter must be at least 1");
  require(calibration_evals >= 0 && calibration_evals % 2 == 0,
          ErrorKind::InvalidArgument, "calibration_evals must be even");
  require(target_first_step > 0, ErrorKind::InvalidArgument,
          "target first step must be positive");
}

CostFunction exact_cost(std::function<double(std::span<const double>)> f) {
  return [f = std::move(f)](std::span<const double> theta, std::uint64_t) {
    return EstimatorResult{f(theta), 0.0, 0, 0};
  };
}

Gains gain_sequences(const SPSAConfig &cfg, int k) {
  require(k >= 1, ErrorKind::InvalidArgument, "gain sequences start at k = 1");
  return {cfg.a / std::pow(cfg.A + k, cfg.alpha), cfg.c / std::pow(k, cfg.gamma)};
}

std::vector<double> spsa_gradient(const CostFunction &cost, std::span<const double> theta,
                                  double c_k, std::span<const int> delta,
                                  std::uint64_t first_index) {
  require(delta.size() == theta.size(), ErrorKind::InvalidArgument,
          "perturbation length mismatch");
  for (int d : delta)
    require(d == 1 || d == -1, ErrorKind::InvalidArgument,
            "perturbation entries must be +1 or -1");
  const double plus = cost(shifted(theta, delta, c_k), first_index).mean;
  const double minus = cost(shifted(theta, delta, -c_k), first_index + 1).mean;
  std::vector<double> g(theta.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = (plus - minus) / (2.0 * c_k * delta[i]);
  return g;
}

double calibrate(const CostFunction &cost, std::span<const double> theta0,
                 const SPSAConfig &cfg, std::uint64_t seed) {
  cfg.validate();
  require(cfg.calibration_evals >= 2, ErrorKind::InvalidArgument,
          "calibration needs at least one perturbation pair");
  Engine rng = make_engine(derive_seed(seed, kCalibrationStream));
  const double c1 = gain_sequences(cfg, 1).c_k;
  const int pairs = cfg.calibration_evals / 2;
  double total = 0.0;
  for (int p = 0; p < pairs; ++p) {
    const auto delta = draw_delta(rng, theta0.size());
    const auto g = spsa_gradient(cost, theta0, c1, delta, 2 * static_cast<std::uint64_t>(p));
    total += g.empty() ? 0.0 : std::abs(g[0]);
  }
  const double mean = total / pairs;
  if (!(mean > 0.0) || !std::isfinite(mean))
    fail(ErrorKind::CalibrationDegenerate,
         "all calibration gradient estimates vanished; cannot set the step size");
  return cfg.target_first_step * std::pow(cfg.A + 1.0, cfg.alpha) / mean;
}

SPSAResult minimize(const CostFunction &cost, std::vector<double> theta0,
                    const SPSAConfig &cfg, std::uint64_t seed,
                    const IterationCallback &callback) {
  cfg.validate();
  SPSAConfig run = cfg;
  SPSAResult result;
  std::uint64_t evals = 0;

  if (run.a == 0.0)
    run.a = calibrate(cost, theta0, run, seed);
  // A preset gain skips calibration but keeps the evaluation numbering.
  evals = static_cast<std::uint64_t>(run.calibration_evals);
  result.a = run.a;

  Engine rng = make_engine(derive_seed(seed, kIterationStream));
  std::vector<double> theta = std::move(theta0);
  result.history.reserve(static_cast<std::size_t>(run.maxiter));
  for (int k = 1; k <= run.maxiter; ++k) {
    try {
      const auto [a_k, c_k] = gain_sequences(run, k);
      const auto delta = draw_delta(rng, theta.size());
      const auto g = spsa_gradient(cost, theta, c_k, delta, evals);
      for (std::size_t i = 0; i < theta.size(); ++i)
        theta[i] -= a_k * g[i];
      IterationRecord rec;
      rec.k = k;
      rec.energy = cost(theta, evals + 2);
      evals += 3;
      rec.theta = theta;
      rec.function_evals = static_cast<long>(evals);
      if (callback)
        callback(rec);
      result.history.push_back(std::move(rec));
    } catch (const Error &e) {
      throw Error(e.kind(), "SPSA iteration " + std::to_string(k) + ": " + e.what());
    }
  }
  result.final_energy = cost(theta, evals);
  ++evals;
  result.theta = std::move(theta);
  result.evaluations = static_cast<long>(evals);
  return result;
}

} // namespace qve
