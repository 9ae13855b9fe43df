#pragma once

#include "udr/convex_set.hpp"
#include "udr/point.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace udr {

struct OperatorNode;

/**
 * Immutable expression tree over the operator calculus: identity, metric
 * projections, reflections R_C = 2P_C - Id, lambda-relaxations, compositions
 * and r-set Douglas-Rachford operators.
 *
 * Copies share structure. Nothing is materialized; apply() evaluates the tree
 * on a point.
 */
class OperatorExpr {
public:
  static OperatorExpr identity(std::size_t dim);
  static OperatorExpr projection(ConvexSet set);
  static OperatorExpr reflection(ConvexSet set);

  std::size_t dim() const noexcept { return dim_; }
  const OperatorNode& node() const noexcept { return *node_; }

  Point apply(const Point& x) const;

  /// Short human-readable rendering, e.g. "relax(P[ball],1.5)".
  std::string describe() const;

private:
  friend OperatorExpr relax(const OperatorExpr&, double);
  friend OperatorExpr compose(std::vector<OperatorExpr>);
  friend OperatorExpr dr_operator(std::vector<ConvexSet>);

  OperatorExpr(std::shared_ptr<const OperatorNode> node, std::size_t dim);

  std::shared_ptr<const OperatorNode> node_;
  std::size_t dim_;
};

struct IdentityOp {};
struct ProjectionOp {
  ConvexSet set;
};
struct ReflectionOp {
  ConvexSet set;
};
struct RelaxationOp {
  OperatorExpr inner;
  double lambda;
};
/// Factors are kept in application order: factors.front() acts first.
struct CompositionOp {
  std::vector<OperatorExpr> factors;
};
/// Sets in application order C_1, ..., C_r.
struct DrOp {
  std::vector<ConvexSet> sets;
};

struct OperatorNode {
  std::variant<IdentityOp, ProjectionOp, ReflectionOp, RelaxationOp, CompositionOp, DrOp> value;
};

/// (1 - lambda) Id + lambda T, lambda in [0, 2].
OperatorExpr relax(const OperatorExpr& op, double lambda);

/// F_k(...F_1(x)...) for factors [F_1, ..., F_k].
OperatorExpr compose(std::vector<OperatorExpr> factors);

/// R_{C_r} o ... o R_{C_1}.
OperatorExpr composite_reflection(const std::vector<ConvexSet>& sets);

/// 1/2 (Id + R_{C_r} ... R_{C_1}).
OperatorExpr dr_operator(std::vector<ConvexSet> sets);

} // namespace udr
