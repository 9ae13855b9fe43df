#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace udr {

/// Raised when two objects that must live in the same space do not.
class DimensionMismatch : public std::invalid_argument {
public:
  DimensionMismatch(std::size_t expected, std::size_t got);
};

/**
 * A point of the finite-dimensional real inner-product space R^d.
 *
 * Points are immutable values. Every coordinate is finite; construction from
 * data containing NaN or Inf throws std::invalid_argument.
 */
class Point {
public:
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point zeros(std::size_t dim);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& values() const noexcept { return coords_; }

  bool operator==(const Point&) const = default;

private:
  std::vector<double> coords_;
};

void require_same_dim(std::size_t expected, std::size_t got);

double inner(const Point& x, const Point& y);
double norm(const Point& x);

/// a*x + b*y, coordinatewise.
Point combine(double a, const Point& x, double b, const Point& y);

Point operator+(const Point& x, const Point& y);
Point operator-(const Point& x, const Point& y);
Point operator*(double a, const Point& x);

/// ||x - y||
double distance(const Point& x, const Point& y);

std::string to_string(const Point& x);

} // namespace udr
