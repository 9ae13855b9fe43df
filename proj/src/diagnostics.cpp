#include "udr/diagnostics.hpp"

#include "udr/random.hpp"

#include <algorithm>
#include <stdexcept>

namespace udr {

namespace {

void require_plan(const SamplePlan& plan) {
  if (plan.samples == 0) throw std::invalid_argument("sample count must be positive");
  if (!(plan.scale > 0.0)) throw std::invalid_argument("sample scale must be positive");
  if (plan.tolerance < 0.0) throw std::invalid_argument("tolerance must be nonnegative");
}

PropertyReport finish(std::string name, const SamplePlan& plan, double worst) {
  return {std::move(name), plan.samples, worst, worst <= plan.tolerance, plan.tolerance};
}

/// Draws pair i as two consecutive dim-vectors of one counter stream.
std::pair<Point, Point> sample_pair(std::size_t dim, const SamplePlan& plan, std::uint64_t i) {
  CounterRng rng(plan.seed, i);
  std::vector<double> x(dim), y(dim);
  for (double& v : x) v = rng.uniform(-plan.scale, plan.scale);
  for (double& v : y) v = rng.uniform(-plan.scale, plan.scale);
  return {Point(std::move(x)), Point(std::move(y))};
}

} // namespace

Point sample_point(std::size_t dim, double scale, std::uint64_t seed, std::uint64_t key) {
  CounterRng rng(seed, key);
  std::vector<double> x(dim);
  for (double& v : x) v = rng.uniform(-scale, scale);
  return Point(std::move(x));
}

PropertyReport check_firmly_nonexpansive(const OperatorExpr& op, const SamplePlan& plan) {
  require_plan(plan);
  double worst = 0.0;
  for (std::size_t i = 0; i < plan.samples; ++i) {
    const auto [x, y] = sample_pair(op.dim(), plan, i);
    const Point image_gap = op.apply(x) - op.apply(y);
    // ||u||^2 - <u, v> evaluated as <u, u - v> to avoid cancelling two large terms.
    const double violation = inner(image_gap, image_gap - (x - y));
    worst = std::max(worst, violation);
  }
  return finish("firmly_nonexpansive", plan, worst);
}

PropertyReport check_nonexpansive(const OperatorExpr& op, const SamplePlan& plan) {
  require_plan(plan);
  double worst = 0.0;
  for (std::size_t i = 0; i < plan.samples; ++i) {
    const auto [x, y] = sample_pair(op.dim(), plan, i);
    worst = std::max(worst, distance(op.apply(x), op.apply(y)) - distance(x, y));
  }
  return finish("nonexpansive", plan, worst);
}

PropertyReport check_quasi_nonexpansive(const OperatorExpr& op, const Point& fixed_point, const SamplePlan& plan) {
  require_plan(plan);
  const double defect = distance(op.apply(fixed_point), fixed_point);
  if (!(defect <= plan.tolerance)) {
    throw std::invalid_argument("reference point is not fixed: ||Tp - p|| = " + std::to_string(defect));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < plan.samples; ++i) {
    const Point x = sample_point(op.dim(), plan.scale, plan.seed, i);
    worst = std::max(worst, distance(op.apply(x), fixed_point) - distance(x, fixed_point));
  }
  return finish("quasi_nonexpansive", plan, worst);
}

std::vector<double> asymptotic_regularity_series(const OperatorExpr& op, const Point& x0, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("series needs at least one step");
  require_same_dim(op.dim(), x0.dim());
  std::vector<double> series;
  series.reserve(steps);
  Point x = x0;
  for (std::size_t k = 0; k < steps; ++k) {
    Point next = op.apply(x);
    series.push_back(distance(next, x));
    x = std::move(next);
  }
  return series;
}

FeasibilityReport feasibility_report(const FeasibilityProblem& problem, const Point& x) {
  require_same_dim(problem.dim(), x.dim());
  FeasibilityReport report;
  for (const ConvexSet& s : problem.sets()) {
    report.distances.push_back(s.distance(x));
    report.max = std::max(report.max, report.distances.back());
  }
  return report;
}

double default_sample_scale(const FeasibilityProblem& problem) {
  double m = 0.0;
  for (const ConvexSet& s : problem.sets()) m = std::max(m, s.magnitude());
  return 4.0 * std::max(m, 1.0);
}

} // namespace udr
