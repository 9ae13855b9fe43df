#pragma once

#include "udr/operator.hpp"
#include "udr/point.hpp"
#include "udr/solver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace udr {

/// Outcome of a sampled operator-inequality test. Violations are magnitudes:
/// pass holds exactly when worst_violation <= tolerance.
struct PropertyReport {
  std::string property_name;
  std::size_t samples = 0;
  double worst_violation = 0.0;
  bool pass = true;
  double tolerance = 0.0;
};

/// Sampling budget: pairs drawn uniformly from [-scale, scale]^dim. Sample i
/// is generated from (seed, i) alone.
struct SamplePlan {
  std::size_t samples = 1000;
  double scale = 1.0;
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
};

/// max(0, ||Tx - Ty||^2 - <Tx - Ty, x - y>) over sampled pairs.
PropertyReport check_firmly_nonexpansive(const OperatorExpr& op, const SamplePlan& plan);

/// max(0, ||Tx - Ty|| - ||x - y||) over sampled pairs.
PropertyReport check_nonexpansive(const OperatorExpr& op, const SamplePlan& plan);

/// max(0, ||Tx - p|| - ||x - p||) over sampled x. Throws std::invalid_argument
/// when p is not a fixed point of T to within plan.tolerance.
PropertyReport check_quasi_nonexpansive(const OperatorExpr& op, const Point& fixed_point, const SamplePlan& plan);

/// ||T^{k+1} x0 - T^k x0|| for k = 0, ..., steps - 1.
std::vector<double> asymptotic_regularity_series(const OperatorExpr& op, const Point& x0, std::size_t steps);

struct FeasibilityReport {
  std::vector<double> distances; // distances[i] is the distance to set i + 1
  double max = 0.0;
};

FeasibilityReport feasibility_report(const FeasibilityProblem& problem, const Point& x);

/// 4x the largest set-defining magnitude, floored at 1.
double default_sample_scale(const FeasibilityProblem& problem);

/// Uniform sample in [-scale, scale]^dim keyed by (seed, key).
Point sample_point(std::size_t dim, double scale, std::uint64_t seed, std::uint64_t key);

} // namespace udr
