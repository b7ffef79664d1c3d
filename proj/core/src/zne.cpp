#include "qve/zne.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "qve/error.hpp"
#include "qve/random.hpp"

namespace qve {

std::string to_string(FitModel model) {
  switch (model) {
  case FitModel::Linear:
    return "linear";
  case FitModel::Quadratic:
    return "quadratic";
  case FitModel::Exponential:
    return "exponential";
  }
  return "?";
}

FitModel parse_fit_model(std::string_view name) {
  if (name == "linear")
    return FitModel::Linear;
  if (name == "quadratic")
    return FitModel::Quadratic;
  if (name == "exponential")
    return FitModel::Exponential;
  fail(ErrorKind::InvalidArgument, "unknown fit model '" + std::string(name) + "'");
}

Circuit fold_circuit(const Circuit &circuit, int n) {
  if (n < 1 || n % 2 == 0)
    fail(ErrorKind::InvalidFold, "fold count must be odd and positive, got " +
                                     std::to_string(n));
  Circuit out = circuit;
  const Circuit inv = circuit.inverse();
  for (int k = 0; k < (n - 1) / 2; ++k) {
    out.append(inv);
    out.append(circuit);
  }
  return out;
}

namespace {

struct LinearFit {
  Eigen::VectorXd coef;
  double residual;
};

LinearFit least_squares(const Eigen::MatrixXd &design, const Eigen::VectorXd &y) {
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(y);
  return {coef, (design * coef - y).squaredNorm()};
}

Eigen::MatrixXd polynomial_design(const Eigen::VectorXd &x, int degree) {
  Eigen::MatrixXd m(x.size(), degree + 1);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double p = 1.0;
    for (int d = 0; d <= degree; ++d, p *= x(i))
      m(i, d) = p;
  }
  return m;
}

// For fixed decay rate, a and b enter linearly.
LinearFit exponential_at(const Eigen::VectorXd &x, const Eigen::VectorXd &y, double c) {
  Eigen::MatrixXd m(x.size(), 2);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    m(i, 0) = 1.0;
    m(i, 1) = std::exp(-c * x(i));
  }
  return least_squares(m, y);
}

FitResult polynomial_fit(const Eigen::VectorXd &x, const Eigen::VectorXd &y, int degree) {
  const auto f = least_squares(polynomial_design(x, degree), y);
  FitResult r;
  r.model = degree == 1 ? FitModel::Linear : FitModel::Quadratic;
  r.params.assign(f.coef.data(), f.coef.data() + f.coef.size());
  r.e0 = r.params[0];
  r.residual = f.residual;
  return r;
}

std::optional<FitResult> exponential_fit(const Eigen::VectorXd &x,
                                         const Eigen::VectorXd &y) {
  const double span = x.maxCoeff() - x.minCoeff();
  // Decay rates between "almost linear" and "gone after one point spacing".
  const double c_lo = 1e-4 / span, c_hi = 50.0 / span;
  constexpr int kGrid = 400;
  const auto residual = [&](double log_c) { return exponential_at(x, y, std::exp(log_c)).residual; };

  int best = 0;
  double best_r = std::numeric_limits<double>::infinity();
  std::vector<double> grid(kGrid + 1);
  for (int k = 0; k <= kGrid; ++k) {
    grid[static_cast<std::size_t>(k)] =
        std::log(c_lo) + (std::log(c_hi) - std::log(c_lo)) * k / kGrid;
    const double r = residual(grid[static_cast<std::size_t>(k)]);
    if (r < best_r) {
      best_r = r;
      best = k;
    }
  }
  if (best == 0 || best == kGrid)
    return std::nullopt; // minimum on the boundary

  // Golden-section refinement in log c.
  double lo = grid[static_cast<std::size_t>(best - 1)];
  double hi = grid[static_cast<std::size_t>(best + 1)];
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
  double r1 = residual(m1), r2 = residual(m2);
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    if (r1 < r2) {
      hi = m2;
      m2 = m1;
      r2 = r1;
      m1 = hi - g * (hi - lo);
      r1 = residual(m1);
    } else {
      lo = m1;
      m1 = m2;
      r1 = r2;
      m2 = lo + g * (hi - lo);
      r2 = residual(m2);
    }
  }
  double c = std::exp(0.5 * (lo + hi));

  // Gauss-Newton polish on (a, b, c), keeping c > 0.
  auto lin = exponential_at(x, y, c);
  Eigen::Vector3d p(lin.coef(0), lin.coef(1), c);
  for (int it = 0; it < 20; ++it) {
    Eigen::MatrixXd jac(x.size(), 3);
    Eigen::VectorXd res(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double e = std::exp(-p(2) * x(i));
      res(i) = p(0) + p(1) * e - y(i);
      jac(i, 0) = 1.0;
      jac(i, 1) = e;
      jac(i, 2) = -p(1) * x(i) * e;
    }
    const Eigen::Vector3d step = jac.colPivHouseholderQr().solve(-res);
    if (!step.allFinite() || p(2) + step(2) <= 0.0)
      break;
    Eigen::Vector3d trial = p + step;
    double old_r = res.squaredNorm(), new_r = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double d = trial(0) + trial(1) * std::exp(-trial(2) * x(i)) - y(i);
      new_r += d * d;
    }
    if (new_r > old_r)
      break;
    p = trial;
    if (step.norm() < 1e-15 * (1.0 + p.norm()))
      break;
  }
  FitResult r;
  r.model = FitModel::Exponential;
  r.params = {p(0), p(1), p(2)};
  r.e0 = p(0) + p(1);
  r.residual = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double d = p(0) + p(1) * std::exp(-p(2) * x(i)) - y(i);
    r.residual += d * d;
  }
  if (!std::isfinite(r.e0))
    return std::nullopt;
  return r;
}

} // namespace

FitResult extrapolate(std::span<const double> lambdas, std::span<const double> values,
                      FitModel model) {
  require(lambdas.size() == values.size(), ErrorKind::InvalidArgument,
          "fold and energy counts differ");
  std::vector<double> sorted(lambdas.begin(), lambdas.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(ErrorKind::DegenerateFit, "noise scales must be distinct");
  const std::size_t needed = model == FitModel::Linear ? 2 : 3;
  if (lambdas.size() < needed)
    fail(ErrorKind::DegenerateFit, to_string(model) + " fit needs at least " +
                                       std::to_string(needed) + " points");
  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(
      lambdas.data(), static_cast<Eigen::Index>(lambdas.size()));
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(
      values.data(), static_cast<Eigen::Index>(values.size()));
  switch (model) {
  case FitModel::Linear:
    return polynomial_fit(x, y, 1);
  case FitModel::Quadratic:
    return polynomial_fit(x, y, 2);
  case FitModel::Exponential:
    if (auto r = exponential_fit(x, y))
      return *r;
    auto q = polynomial_fit(x, y, 2);
    q.fallback = true;
    return q;
  }
  fail(ErrorKind::InvalidArgument, "unknown fit model");
}

FitResult extrapolate(std::span<const ZNEPoint> points, FitModel model) {
  std::vector<double> x, y;
  for (const auto &p : points) {
    x.push_back(p.fold);
    y.push_back(p.energy.mean);
  }
  return extrapolate(x, y, model);
}

ZNEResult run_zne(const Circuit &circuit, std::span<const double> theta,
                  const PauliSum &h, std::span<const int> folds, long shots,
                  std::uint64_t seed, const NoiseModel &noise,
                  std::span<const FitModel> models) {
  require(!folds.empty() && folds.front() == 1 && std::is_sorted(folds.begin(), folds.end()),
          ErrorKind::InvalidArgument, "folds must be ascending and start at 1");
  ZNEResult result;
  for (int f : folds) {
    const Circuit folded = fold_circuit(circuit, f);
    result.points.push_back(
        {f, estimate(folded, theta, h, shots, derive_seed(seed, static_cast<std::uint64_t>(f)),
                     noise)});
  }
  result.raw = result.points.front().energy.mean;
  static constexpr FitModel kAll[] = {FitModel::Linear, FitModel::Quadratic,
                                      FitModel::Exponential};
  if (models.empty())
    models = kAll;
  for (FitModel m : models) {
    const std::size_t needed = m == FitModel::Linear ? 2 : 3;
    if (result.points.size() >= needed)
      result.fits[m] = extrapolate(result.points, m);
  }
  return result;
}

} // namespace qve
