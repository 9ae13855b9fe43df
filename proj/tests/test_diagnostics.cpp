#include "udr/diagnostics.hpp"

#include "udr/problem_io.hpp"
#include "udr/repro.hpp"

#include <doctest.h>

#include <algorithm>

using namespace udr;

namespace {

FeasibilityProblem three_balls() {
  return FeasibilityProblem({ConvexSet::ball(Point{0, 0}, 1), ConvexSet::ball(Point{1, 0}, 1),
                             ConvexSet::ball(Point{0.5, 0.8}, 1)},
                            Point{0.5, 0.3});
}

SamplePlan plan(std::size_t dim_scale_hint = 4) {
  SamplePlan p;
  p.samples = 1000;
  p.scale = static_cast<double>(dim_scale_hint);
  p.seed = 123;
  p.tolerance = 1e-10;
  return p;
}

} // namespace

TEST_CASE("identity is the equality case of every inequality") {
  const OperatorExpr id = OperatorExpr::identity(3);
  CHECK(check_firmly_nonexpansive(id, plan()).worst_violation == 0.0);
  CHECK(check_nonexpansive(id, plan()).worst_violation == 0.0);
  CHECK(check_quasi_nonexpansive(id, Point{1, -2, 3}, plan()).worst_violation == 0.0);
  const auto series = asymptotic_regularity_series(id, Point{1, 2, 3}, 10);
  CHECK(series.size() == 10);
  CHECK(std::all_of(series.begin(), series.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("ball projection passes firm nonexpansiveness") {
  const PropertyReport r = check_firmly_nonexpansive(OperatorExpr::projection(ConvexSet::ball(Point{1, 2}, 1.5)), plan());
  CHECK(r.pass);
  CHECK(r.samples == 1000);
  CHECK(r.property_name == "firmly_nonexpansive");
}

TEST_CASE("halfspace reflection is caught as not firmly nonexpansive") {
  const ConvexSet half = ConvexSet::halfspace(Point{1, 0}, 0);
  const OperatorExpr refl = OperatorExpr::reflection(half);

  // Brute-force oracle: scan a pair grid for the largest violation.
  double brute = 0.0;
  for (int i = -10; i <= 10; ++i) {
    for (int j = -10; j <= 10; ++j) {
      const Point x{i * 0.4, 1.0};
      const Point y{j * 0.4, -1.0};
      const Point gap = refl.apply(x) - refl.apply(y);
      brute = std::max(brute, inner(gap, gap) - inner(gap, x - y));
    }
  }
  CHECK(brute > 1.0);

  const PropertyReport r = check_firmly_nonexpansive(refl, plan());
  CHECK_FALSE(r.pass);
  CHECK(r.worst_violation > 1.0);
  CHECK(check_nonexpansive(refl, plan()).pass);
}

TEST_CASE("nonexpansive examples") {
  const std::vector<ConvexSet> sets{ConvexSet::ball(Point{0, 0}, 1), ConvexSet::halfspace(Point{1, 1}, 0.5),
                                    ConvexSet::hyperplane(Point{1, -2}, 0.3)};
  CHECK(check_nonexpansive(composite_reflection(sets), plan()).pass);
  CHECK(check_nonexpansive(relax(OperatorExpr::projection(sets[0]), 2), plan()).pass);
}

TEST_CASE("quasi-nonexpansive around common points") {
  const FeasibilityProblem p = three_balls();
  const OperatorExpr t = dr_operator(p.sets());
  CHECK(check_quasi_nonexpansive(t, *p.interior_point(), plan()).pass);
  CHECK(check_quasi_nonexpansive(relax(t, 1.5), *p.interior_point(), plan()).pass);
  CHECK(check_quasi_nonexpansive(OperatorExpr::identity(2), Point{7, 7}, plan()).worst_violation == 0.0);
  CHECK_THROWS_AS(check_quasi_nonexpansive(t, Point{5, 5}, plan()), std::invalid_argument);
}

TEST_CASE("sampling plan validation") {
  SamplePlan bad = plan();
  bad.samples = 0;
  CHECK_THROWS_AS(check_nonexpansive(OperatorExpr::identity(2), bad), std::invalid_argument);
  bad = plan();
  bad.scale = 0.0;
  CHECK_THROWS_AS(check_firmly_nonexpansive(OperatorExpr::identity(2), bad), std::invalid_argument);
}

TEST_CASE("asymptotic regularity series") {
  const FeasibilityProblem p = three_balls();
  const OperatorExpr q = build_composite_Q(p, ControlMap::cyclic(3), 2);
  const auto series = asymptotic_regularity_series(q, Point{5, 5}, 10'000);
  CHECK(series.back() <= 1e-8);

  // ||R^2 x - R x|| = ||x - R x|| = 2 dist(x, H) for an involution.
  const OperatorExpr refl = OperatorExpr::reflection(ConvexSet::hyperplane(Point{0, 1}, 0));
  const auto flat = asymptotic_regularity_series(refl, Point{1, 2}, 50);
  for (double v : flat) CHECK(v == 4.0);
  CHECK_THROWS_AS(asymptotic_regularity_series(refl, Point{1, 2}, 0), std::invalid_argument);
}

TEST_CASE("feasibility report") {
  const FeasibilityProblem p = three_balls();
  const FeasibilityReport inside = feasibility_report(p, *p.interior_point());
  CHECK(inside.distances == std::vector<double>{0, 0, 0});
  CHECK(inside.max == 0.0);

  // (0.5, -0.8) lies in the first two balls but 1.6 away from (0.5, 0.8).
  const FeasibilityReport one = feasibility_report(p, Point{0.5, -0.8});
  CHECK(std::count_if(one.distances.begin(), one.distances.end(), [](double d) { return d > 0.0; }) == 1);
  CHECK(one.distances[2] == doctest::Approx(0.6));
  CHECK(one.max == one.distances[2]);

  const IterationTrace t = run_composite(p, ControlMap::cyclic(3), 2, Point{5, 5});
  CHECK(feasibility_report(p, t.last().iterate).max <= 1e-8);
  CHECK_THROWS_AS(feasibility_report(p, Point{1, 2, 3}), DimensionMismatch);
}

TEST_CASE("catalog projections and DR operators across dimensions") {
  for (std::size_t dim : {2, 5, 50}) {
    const std::string doc = repro::catalog_document(dim, 77);
    const FeasibilityProblem p = parse_problem(doc);
    SamplePlan sp = plan();
    sp.scale = default_sample_scale(p);
    for (Index i = 1; i <= p.size(); ++i) {
      const OperatorExpr proj = OperatorExpr::projection(p.set(i));
      CAPTURE(dim);
      CAPTURE(i);
      CHECK(check_firmly_nonexpansive(proj, sp).pass);
      for (double lambda : {0.25, 1.0, 1.75}) CHECK(check_nonexpansive(relax(proj, lambda), sp).pass);
      for (Index j = 1; j <= p.size(); ++j) CHECK(check_firmly_nonexpansive(dr_operator({p.set(i), p.set(j)}), sp).pass);
    }
    CHECK(check_firmly_nonexpansive(dr_operator(p.sets()), sp).pass);
  }
}

TEST_CASE("reports are deterministic and pass tracks the tolerance") {
  const OperatorExpr refl = OperatorExpr::reflection(ConvexSet::ball(Point{0, 0}, 1));
  const PropertyReport a = check_firmly_nonexpansive(refl, plan());
  const PropertyReport b = check_firmly_nonexpansive(refl, plan());
  CHECK(a.worst_violation == b.worst_violation);
  CHECK(a.pass == (a.worst_violation <= a.tolerance));
  SamplePlan other = plan();
  other.seed = 124;
  CHECK(check_firmly_nonexpansive(refl, other).worst_violation != a.worst_violation);
  CHECK(sample_point(4, 2.0, 9, 3) == sample_point(4, 2.0, 9, 3));
}
