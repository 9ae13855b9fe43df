#pragma once

#include "udr/control.hpp"
#include "udr/convex_set.hpp"
#include "udr/operator.hpp"
#include "udr/point.hpp"

#include <optional>
#include <string>
#include <vector>

namespace udr {

/// Strict margin an interior point must keep from every set boundary.
inline constexpr double kInteriorMargin = 1e-9;

/**
 * The family {C_1, ..., C_m} together with an optional point known to be
 * interior to every set.
 */
class FeasibilityProblem {
public:
  explicit FeasibilityProblem(std::vector<ConvexSet> sets, std::optional<Point> interior_point = std::nullopt);

  std::size_t dim() const noexcept { return sets_.front().dim(); }
  std::size_t size() const noexcept { return sets_.size(); }
  const std::vector<ConvexSet>& sets() const noexcept { return sets_; }
  /// 1-based, matching control indices.
  const ConvexSet& set(Index i) const;
  const std::optional<Point>& interior_point() const noexcept { return interior_point_; }

  double max_distance(const Point& x) const;

private:
  std::vector<ConvexSet> sets_;
  std::optional<Point> interior_point_;
};

struct StopRule {
  std::size_t max_iters = 100'000;
  double displacement_tol = 1e-10;
  double feasibility_tol = 1e-8;
};

enum class TerminalStatus { converged_displacement, feasible, max_iters };

std::string to_string(TerminalStatus s);

struct TraceRecord {
  std::size_t n;
  Point iterate;
  double displacement;
  double max_set_distance;
  std::string operator_id;
  /// ||S x_n - x_n|| for a designated certifier S, when one is configured.
  std::optional<double> certifier_residual;
};

struct IterationTrace {
  std::vector<TraceRecord> steps;
  TerminalStatus status = TerminalStatus::max_iters;

  const TraceRecord& last() const { return steps.back(); }
  bool converged() const noexcept { return status != TerminalStatus::max_iters; }
};

/// S_n: the DR operator over the sets selected by window(f, r, n).
OperatorExpr build_S(const FeasibilityProblem& problem, const ControlMap& f, std::size_t r, std::uint64_t n);

/// Q = S_{j_f} ... S_0 stored in application order S_0 first.
OperatorExpr build_composite_Q(const FeasibilityProblem& problem, const ControlMap& f, std::size_t r);

struct RunOptions {
  StopRule stop;
  std::optional<OperatorExpr> certifier;
};

/// x_n = S_{n-1}(x_{n-1}).
IterationTrace run_unrestricted_dr(const FeasibilityProblem& problem, const ControlMap& f, std::size_t r,
                                   const Point& x0, const RunOptions& opts = {});

/// y_n = Q(y_{n-1}).
IterationTrace run_composite(const FeasibilityProblem& problem, const ControlMap& f, std::size_t r,
                             const Point& y0, const RunOptions& opts = {});

/// x_n = T_{h(n-1)}(x_{n-1}) with h onto {1, ..., k}. Feasibility is measured
/// against `problem`.
IterationTrace run_unrestricted_product(const FeasibilityProblem& problem, const std::vector<OperatorExpr>& operators,
                                        const ControlMap& h, const Point& x0, const RunOptions& opts = {});

} // namespace udr
