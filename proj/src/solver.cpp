#include "udr/solver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace udr {

FeasibilityProblem::FeasibilityProblem(std::vector<ConvexSet> sets, std::optional<Point> interior_point)
    : sets_(std::move(sets)), interior_point_(std::move(interior_point)) {
  if (sets_.empty()) throw std::invalid_argument("feasibility problem needs at least one set");
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    if (sets_[i].dim() != sets_.front().dim()) {
      throw std::invalid_argument("set " + std::to_string(i + 1) + ": dimension " + std::to_string(sets_[i].dim()) +
                                  " differs from " + std::to_string(sets_.front().dim()));
    }
  }
  if (interior_point_) {
    require_same_dim(dim(), interior_point_->dim());
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      const double margin = sets_[i].interior_margin(*interior_point_);
      if (!(margin >= kInteriorMargin)) {
        throw std::invalid_argument("interior point is not strictly inside set " + std::to_string(i + 1) +
                                    " (margin " + std::to_string(margin) + ")");
      }
    }
  }
}

const ConvexSet& FeasibilityProblem::set(Index i) const {
  if (i < 1 || i > sets_.size()) {
    throw std::out_of_range("set index " + std::to_string(i) + " outside {1.." + std::to_string(sets_.size()) + "}");
  }
  return sets_[i - 1];
}

double FeasibilityProblem::max_distance(const Point& x) const {
  double worst = 0.0;
  for (const ConvexSet& s : sets_) worst = std::max(worst, s.distance(x));
  return worst;
}

std::string to_string(TerminalStatus s) {
  switch (s) {
  case TerminalStatus::converged_displacement: return "converged_displacement";
  case TerminalStatus::feasible: return "feasible";
  case TerminalStatus::max_iters: return "max_iters";
  }
  return "unknown";
}

OperatorExpr build_S(const FeasibilityProblem& problem, const ControlMap& f, std::size_t r, std::uint64_t n) {
  std::vector<ConvexSet> sets;
  for (Index i : window(f, r, n)) sets.push_back(problem.set(i));
  return dr_operator(std::move(sets));
}

OperatorExpr build_composite_Q(const FeasibilityProblem& problem, const ControlMap& f, std::size_t r) {
  const std::uint64_t jf = cover_index(f);
  std::vector<OperatorExpr> factors;
  factors.reserve(jf + 1);
  for (std::uint64_t n = 0; n <= jf; ++n) factors.push_back(build_S(problem, f, r, n));
  return compose(std::move(factors));
}

namespace {

struct Step {
  const OperatorExpr& op;
  std::string id;
};

/// Shared driver: `next(n)` yields the operator producing x_{n+1} from x_n.
IterationTrace iterate(const FeasibilityProblem& problem, const Point& x0, const RunOptions& opts,
                       const std::function<Step(std::size_t)>& next) {
  require_same_dim(problem.dim(), x0.dim());
  if (opts.certifier) require_same_dim(problem.dim(), opts.certifier->dim());
  const StopRule& stop = opts.stop;
  if (stop.max_iters == 0) throw std::invalid_argument("max_iters must be positive");
  if (stop.displacement_tol < 0.0 || stop.feasibility_tol < 0.0) {
    throw std::invalid_argument("stopping tolerances must be nonnegative");
  }

  auto certify = [&](const Point& x) -> std::optional<double> {
    if (!opts.certifier) return std::nullopt;
    return distance(opts.certifier->apply(x), x);
  };

  IterationTrace trace;
  trace.steps.push_back({0, x0, 0.0, problem.max_distance(x0), "init", certify(x0)});
  if (trace.steps.back().max_set_distance <= stop.feasibility_tol) {
    trace.status = TerminalStatus::feasible;
    return trace;
  }
  for (std::size_t n = 1; n <= stop.max_iters; ++n) {
    const Point& prev = trace.steps.back().iterate;
    Step step = next(n - 1);
    Point x = step.op.apply(prev);
    const double disp = distance(x, prev);
    const double feas = problem.max_distance(x);
    auto residual = certify(x);
    trace.steps.push_back({n, std::move(x), disp, feas, std::move(step.id), residual});
    if (feas <= stop.feasibility_tol) {
      if (stop.displacement_tol == 0.0) {
        trace.status = TerminalStatus::feasible;
        return trace;
      }
      if (disp <= stop.displacement_tol) {
        trace.status = TerminalStatus::converged_displacement;
        return trace;
      }
    }
  }
  trace.status = TerminalStatus::max_iters;
  return trace;
}

std::string window_id(std::uint64_t n, const std::vector<Index>& w) {
  std::string id = "S" + std::to_string(n) + "[";
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (j) id += ";";
    id += std::to_string(w[j]);
  }
  return id + "]";
}

} // namespace

IterationTrace run_unrestricted_dr(const FeasibilityProblem& problem, const ControlMap& f, std::size_t r,
                                   const Point& x0, const RunOptions& opts) {
  if (f.range_size() > problem.size()) {
    throw std::invalid_argument("control range exceeds the number of sets");
  }
  std::map<std::vector<Index>, OperatorExpr> cache;
  return iterate(problem, x0, opts, [&](std::size_t n) {
    std::vector<Index> w = window(f, r, n);
    auto it = cache.find(w);
    if (it == cache.end()) {
      std::vector<ConvexSet> sets;
      for (Index i : w) sets.push_back(problem.set(i));
      it = cache.emplace(w, dr_operator(std::move(sets))).first;
    }
    return Step{it->second, window_id(n, w)};
  });
}

IterationTrace run_composite(const FeasibilityProblem& problem, const ControlMap& f, std::size_t r,
                             const Point& y0, const RunOptions& opts) {
  if (f.range_size() > problem.size()) {
    throw std::invalid_argument("control range exceeds the number of sets");
  }
  const OperatorExpr q = build_composite_Q(problem, f, r);
  return iterate(problem, y0, opts, [&](std::size_t) { return Step{q, "Q"}; });
}

IterationTrace run_unrestricted_product(const FeasibilityProblem& problem, const std::vector<OperatorExpr>& operators,
                                        const ControlMap& h, const Point& x0, const RunOptions& opts) {
  if (operators.empty()) throw std::invalid_argument("product needs at least one operator");
  for (const OperatorExpr& op : operators) require_same_dim(problem.dim(), op.dim());
  if (h.range_size() != operators.size()) {
    throw std::out_of_range("product control range {1.." + std::to_string(h.range_size()) + "} does not match " +
                            std::to_string(operators.size()) + " operators");
  }
  return iterate(problem, x0, opts, [&](std::size_t n) {
    const Index i = h.index_at(n);
    return Step{operators[i - 1], "T" + std::to_string(i)};
  });
}

} // namespace udr
