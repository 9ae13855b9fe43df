#pragma once

#include "udr/point.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace udr {

/// { x : <a, x> <= b }
struct Halfspace {
  Point a;
  double b;
};

/// { x : <a, x> = b }
struct Hyperplane {
  Point a;
  double b;
};

struct Ball {
  Point center;
  double radius;
};

/// { x : lo <= x <= hi } coordinatewise.
struct Box {
  Point lo;
  Point hi;
};

/// { x : A x = b }, A given by its rows.
struct AffineSubspace {
  std::vector<Point> rows;
  std::vector<double> rhs;
};

enum class SetKind { halfspace, hyperplane, ball, box, affine };

std::string kind_name(SetKind kind);

/**
 * A nonempty closed convex subset of R^d with a closed-form metric projection.
 *
 * Instances are immutable once built. Degenerate parameters are rejected by the
 * constructor: a normal with ||a|| < 1e-12, a nonpositive radius, a box with
 * lo_i > hi_i, or an affine system whose least-squares residual exceeds 1e-9.
 * The affine kind caches a complete orthogonal decomposition of A.
 */
class ConvexSet {
public:
  using Shape = std::variant<Halfspace, Hyperplane, Ball, Box, AffineSubspace>;

  explicit ConvexSet(Shape shape);

  static ConvexSet halfspace(Point a, double b);
  static ConvexSet hyperplane(Point a, double b);
  static ConvexSet ball(Point center, double radius);
  static ConvexSet box(Point lo, Point hi);
  static ConvexSet affine(std::vector<Point> rows, std::vector<double> rhs);

  std::size_t dim() const noexcept { return dim_; }
  SetKind kind() const noexcept;
  const Shape& shape() const noexcept { return shape_; }

  Point project(const Point& x) const;
  double distance(const Point& x) const;
  bool contains(const Point& x, double tol) const;

  /// Signed depth of x inside the set: the radius of the largest ball around x
  /// that fits in the set, or minus the distance when x lies outside. Sets with
  /// empty interior report a value <= 0 everywhere.
  double interior_margin(const Point& x) const;

  /// Largest absolute value among the defining parameters.
  double magnitude() const;

private:
  struct AffineFactor;

  Shape shape_;
  std::size_t dim_ = 0;
  std::shared_ptr<const AffineFactor> factor_;
};

} // namespace udr
