#include "udr/operator.hpp"

#include <charconv>
#include <stdexcept>

namespace udr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Point reflect(const ConvexSet& set, const Point& x) { return combine(2.0, set.project(x), -1.0, x); }

std::string short_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void require_common_dim(const std::vector<ConvexSet>& sets) {
  if (sets.empty()) throw std::invalid_argument("operator needs at least one set");
  for (const ConvexSet& s : sets) require_same_dim(sets.front().dim(), s.dim());
}

} // namespace

OperatorExpr::OperatorExpr(std::shared_ptr<const OperatorNode> node, std::size_t dim)
    : node_(std::move(node)), dim_(dim) {}

OperatorExpr OperatorExpr::identity(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("operator dimension must be positive");
  return {std::make_shared<const OperatorNode>(OperatorNode{IdentityOp{}}), dim};
}

OperatorExpr OperatorExpr::projection(ConvexSet set) {
  const std::size_t d = set.dim();
  return {std::make_shared<const OperatorNode>(OperatorNode{ProjectionOp{std::move(set)}}), d};
}

OperatorExpr OperatorExpr::reflection(ConvexSet set) {
  const std::size_t d = set.dim();
  return {std::make_shared<const OperatorNode>(OperatorNode{ReflectionOp{std::move(set)}}), d};
}

Point OperatorExpr::apply(const Point& x) const {
  require_same_dim(dim_, x.dim());
  return std::visit(
      overloaded{
          [&](const IdentityOp&) { return x; },
          [&](const ProjectionOp& op) { return op.set.project(x); },
          [&](const ReflectionOp& op) { return reflect(op.set, x); },
          [&](const RelaxationOp& op) { return combine(1.0 - op.lambda, x, op.lambda, op.inner.apply(x)); },
          [&](const CompositionOp& op) {
            Point y = x;
            for (const OperatorExpr& f : op.factors) y = f.apply(y);
            return y;
          },
          [&](const DrOp& op) {
            Point y = x;
            for (const ConvexSet& s : op.sets) y = reflect(s, y);
            return combine(0.5, x, 0.5, y);
          },
      },
      node_->value);
}

std::string OperatorExpr::describe() const {
  return std::visit(
      overloaded{
          [](const IdentityOp&) { return std::string("Id"); },
          [](const ProjectionOp& op) { return "P[" + kind_name(op.set.kind()) + "]"; },
          [](const ReflectionOp& op) { return "R[" + kind_name(op.set.kind()) + "]"; },
          [](const RelaxationOp& op) { return "relax(" + op.inner.describe() + "," + short_double(op.lambda) + ")"; },
          [](const CompositionOp& op) {
            std::string s = "comp(";
            for (std::size_t i = 0; i < op.factors.size(); ++i) {
              if (i) s += ";";
              s += op.factors[i].describe();
            }
            return s + ")";
          },
          [](const DrOp& op) { return "DR" + std::to_string(op.sets.size()); },
      },
      node_->value);
}

OperatorExpr relax(const OperatorExpr& op, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 2.0)) {
    throw std::invalid_argument("relaxation parameter must lie in [0, 2], got " + short_double(lambda));
  }
  return {std::make_shared<const OperatorNode>(OperatorNode{RelaxationOp{op, lambda}}), op.dim()};
}

OperatorExpr compose(std::vector<OperatorExpr> factors) {
  if (factors.empty()) throw std::invalid_argument("composition needs at least one factor");
  const std::size_t d = factors.front().dim();
  for (const OperatorExpr& f : factors) require_same_dim(d, f.dim());
  return {std::make_shared<const OperatorNode>(OperatorNode{CompositionOp{std::move(factors)}}), d};
}

OperatorExpr composite_reflection(const std::vector<ConvexSet>& sets) {
  require_common_dim(sets);
  std::vector<OperatorExpr> factors;
  factors.reserve(sets.size());
  for (const ConvexSet& s : sets) factors.push_back(OperatorExpr::reflection(s));
  return compose(std::move(factors));
}

OperatorExpr dr_operator(std::vector<ConvexSet> sets) {
  require_common_dim(sets);
  const std::size_t d = sets.front().dim();
  return {std::make_shared<const OperatorNode>(OperatorNode{DrOp{std::move(sets)}}), d};
}

} // namespace udr
