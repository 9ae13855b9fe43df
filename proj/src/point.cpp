#include "udr/point.hpp"

#include <cmath>
#include <sstream>

namespace udr {

DimensionMismatch::DimensionMismatch(std::size_t expected, std::size_t got)
    : std::invalid_argument("dimension mismatch: expected " + std::to_string(expected) +
                            ", got " + std::to_string(got)) {}

namespace {

void require_finite(const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw std::invalid_argument("non-finite coordinate at index " + std::to_string(i));
    }
  }
}

} // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw std::invalid_argument("point dimension must be positive");
  }
  require_finite(coords_);
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point Point::zeros(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

void require_same_dim(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw DimensionMismatch(expected, got);
  }
}

double inner(const Point& x, const Point& y) {
  require_same_dim(x.dim(), y.dim());
  double s = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    s += x[i] * y[i];
  }
  return s;
}

double norm(const Point& x) { return std::sqrt(inner(x, x)); }

Point combine(double a, const Point& x, double b, const Point& y) {
  require_same_dim(x.dim(), y.dim());
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a * x[i] + b * y[i];
  }
  return Point(std::move(out));
}

Point operator+(const Point& x, const Point& y) { return combine(1.0, x, 1.0, y); }
Point operator-(const Point& x, const Point& y) { return combine(1.0, x, -1.0, y); }

Point operator*(double a, const Point& x) {
  std::vector<double> out(x.values());
  for (double& v : out) {
    v *= a;
  }
  return Point(std::move(out));
}

double distance(const Point& x, const Point& y) { return norm(x - y); }

std::string to_string(const Point& x) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (i) os << ", ";
    os << x[i];
  }
  os << ')';
  return os.str();
}

} // namespace udr
