#include "udr/convex_set.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace udr {

namespace {

constexpr double kMinNormal = 1e-12;
constexpr double kAffineResidualTol = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_normal(const Point& a) {
  if (norm(a) < kMinNormal) {
    throw std::invalid_argument("degenerate normal: ||a|| < 1e-12");
  }
}

double max_abs(const Point& p) {
  double m = 0.0;
  for (double v : p.coords()) m = std::max(m, std::abs(v));
  return m;
}

} // namespace

std::string kind_name(SetKind kind) {
  switch (kind) {
  case SetKind::halfspace: return "halfspace";
  case SetKind::hyperplane: return "hyperplane";
  case SetKind::ball: return "ball";
  case SetKind::box: return "box";
  case SetKind::affine: return "affine";
  }
  return "unknown";
}

struct ConvexSet::AffineFactor {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
};

ConvexSet::ConvexSet(Shape shape) : shape_(std::move(shape)) {
  std::visit(
      overloaded{
          [this](const Halfspace& h) {
            require_normal(h.a);
            if (!std::isfinite(h.b)) throw std::invalid_argument("halfspace offset must be finite");
            dim_ = h.a.dim();
          },
          [this](const Hyperplane& h) {
            require_normal(h.a);
            if (!std::isfinite(h.b)) throw std::invalid_argument("hyperplane offset must be finite");
            dim_ = h.a.dim();
          },
          [this](const Ball& s) {
            if (!(s.radius > 0.0) || !std::isfinite(s.radius)) {
              throw std::invalid_argument("ball radius must be positive and finite");
            }
            dim_ = s.center.dim();
          },
          [this](const Box& s) {
            require_same_dim(s.lo.dim(), s.hi.dim());
            for (std::size_t i = 0; i < s.lo.dim(); ++i) {
              if (s.lo[i] > s.hi[i]) {
                throw std::invalid_argument("box bounds inverted at coordinate " + std::to_string(i));
              }
            }
            dim_ = s.lo.dim();
          },
          [this](const AffineSubspace& s) {
            if (s.rows.empty()) throw std::invalid_argument("affine subspace needs at least one row");
            if (s.rows.size() != s.rhs.size()) {
              throw std::invalid_argument("affine subspace: row count and rhs length differ");
            }
            dim_ = s.rows.front().dim();
            auto f = std::make_shared<AffineFactor>();
            f->A.resize(static_cast<Eigen::Index>(s.rows.size()), static_cast<Eigen::Index>(dim_));
            f->b.resize(static_cast<Eigen::Index>(s.rhs.size()));
            for (std::size_t i = 0; i < s.rows.size(); ++i) {
              require_same_dim(dim_, s.rows[i].dim());
              if (!std::isfinite(s.rhs[i])) throw std::invalid_argument("affine rhs must be finite");
              for (std::size_t j = 0; j < dim_; ++j) {
                f->A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s.rows[i][j];
              }
              f->b(static_cast<Eigen::Index>(i)) = s.rhs[i];
            }
            f->cod.compute(f->A);
            if (f->cod.rank() == 0) throw std::invalid_argument("degenerate affine system: A has rank 0");
            const Eigen::VectorXd particular = f->cod.solve(f->b);
            const double residual = (f->A * particular - f->b).norm();
            if (!(residual <= kAffineResidualTol)) {
              throw std::invalid_argument("inconsistent affine system: residual " + std::to_string(residual));
            }
            factor_ = std::move(f);
          },
      },
      shape_);
}

ConvexSet ConvexSet::halfspace(Point a, double b) { return ConvexSet(Halfspace{std::move(a), b}); }
ConvexSet ConvexSet::hyperplane(Point a, double b) { return ConvexSet(Hyperplane{std::move(a), b}); }
ConvexSet ConvexSet::ball(Point center, double radius) { return ConvexSet(Ball{std::move(center), radius}); }
ConvexSet ConvexSet::box(Point lo, Point hi) { return ConvexSet(Box{std::move(lo), std::move(hi)}); }
ConvexSet ConvexSet::affine(std::vector<Point> rows, std::vector<double> rhs) {
  return ConvexSet(AffineSubspace{std::move(rows), std::move(rhs)});
}

SetKind ConvexSet::kind() const noexcept { return static_cast<SetKind>(shape_.index()); }

Point ConvexSet::project(const Point& x) const {
  require_same_dim(dim_, x.dim());
  return std::visit(
      overloaded{
          [&](const Halfspace& h) {
            const double excess = inner(h.a, x) - h.b;
            if (excess <= 0.0) return x;
            return combine(1.0, x, -excess / inner(h.a, h.a), h.a);
          },
          [&](const Hyperplane& h) {
            const double excess = inner(h.a, x) - h.b;
            return combine(1.0, x, -excess / inner(h.a, h.a), h.a);
          },
          [&](const Ball& s) {
            const Point offset = x - s.center;
            const double len = norm(offset);
            if (len <= s.radius) return x;
            return combine(1.0, s.center, s.radius / len, offset);
          },
          [&](const Box& s) {
            std::vector<double> out(x.dim());
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(x[i], s.lo[i], s.hi[i]);
            return Point(std::move(out));
          },
          [&](const AffineSubspace&) {
            const Eigen::Map<const Eigen::VectorXd> xv(x.coords().data(), static_cast<Eigen::Index>(x.dim()));
            const Eigen::VectorXd correction = factor_->cod.solve(factor_->A * xv - factor_->b);
            std::vector<double> out(x.dim());
            for (std::size_t i = 0; i < out.size(); ++i) {
              out[i] = x[i] - correction(static_cast<Eigen::Index>(i));
            }
            return Point(std::move(out));
          },
      },
      shape_);
}

double ConvexSet::distance(const Point& x) const { return udr::distance(x, project(x)); }

bool ConvexSet::contains(const Point& x, double tol) const {
  if (tol < 0.0) throw std::invalid_argument("membership tolerance must be nonnegative");
  return distance(x) <= tol;
}

double ConvexSet::interior_margin(const Point& x) const {
  require_same_dim(dim_, x.dim());
  return std::visit(
      overloaded{
          [&](const Halfspace& h) { return (h.b - inner(h.a, x)) / norm(h.a); },
          [&](const Hyperplane&) { return -distance(x); },
          [&](const Ball& s) { return s.radius - udr::distance(x, s.center); },
          [&](const Box& s) {
            double inside = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < x.dim(); ++i) {
              inside = std::min({inside, x[i] - s.lo[i], s.hi[i] - x[i]});
            }
            return inside < 0.0 ? -distance(x) : inside;
          },
          [&](const AffineSubspace&) { return -distance(x); },
      },
      shape_);
}

double ConvexSet::magnitude() const {
  return std::visit(
      overloaded{
          [](const Halfspace& h) { return std::max(max_abs(h.a), std::abs(h.b)); },
          [](const Hyperplane& h) { return std::max(max_abs(h.a), std::abs(h.b)); },
          [](const Ball& s) { return std::max(max_abs(s.center), s.radius); },
          [](const Box& s) { return std::max(max_abs(s.lo), max_abs(s.hi)); },
          [](const AffineSubspace& s) {
            double m = 0.0;
            for (const Point& row : s.rows) m = std::max(m, max_abs(row));
            for (double v : s.rhs) m = std::max(m, std::abs(v));
            return m;
          },
      },
      shape_);
}

} // namespace udr
