#include "udr/operator.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace udr;

namespace {

const ConvexSet x_axis = ConvexSet::hyperplane(Point{0, 1}, 0);
const ConvexSet y_axis = ConvexSet::hyperplane(Point{1, 0}, 0);

// Closed-form reflections across the coordinate axes, independent of project().
Point reflect_x_axis(const Point& p) { return Point{p[0], -p[1]}; }
Point reflect_y_axis(const Point& p) { return Point{-p[0], p[1]}; }

/// Sets in R^2 that all contain the origin in their interior or on them.
std::vector<ConvexSet> sets_through_origin(test::Gen& gen) {
  return {
      ConvexSet::ball(gen.point(2, 0.5), 1.0),
      ConvexSet::halfspace(gen.point(2, 1.0), gen.real(0.1, 1.0)),
      ConvexSet::hyperplane(gen.point(2, 1.0), 0.0),
      ConvexSet::box(Point{-1, -0.5}, Point{0.5, 2}),
  };
}

} // namespace

TEST_CASE("apply examples") {
  const OperatorExpr refl = OperatorExpr::reflection(ConvexSet::halfspace(Point{1, 0}, 0));
  CHECK(refl.apply(Point{2, 3}) == Point{-2, 3});

  const Point x{1, 1};
  const Point manual = reflect_y_axis(reflect_x_axis(x));
  CHECK(manual == Point{-1, -1});
  CHECK(dr_operator({x_axis, y_axis}).apply(x) == combine(0.5, x, 0.5, manual));
  CHECK(dr_operator({x_axis, y_axis}).apply(x) == Point{0, 0});
  CHECK(composite_reflection({x_axis, y_axis}).apply(x) == Point{-1, -1});
  CHECK(OperatorExpr::identity(2).apply(x) == x);
}

TEST_CASE("relax examples and parameter range") {
  const OperatorExpr p = OperatorExpr::projection(ConvexSet::ball(Point{0, 0}, 1));
  const Point r = relax(p, 2).apply(Point{3, 4});
  CHECK(r[0] == doctest::Approx(-1.8));
  CHECK(r[1] == doctest::Approx(-2.4));
  CHECK(relax(p, 1).apply(Point{3, 4}) == p.apply(Point{3, 4}));
  CHECK(relax(p, 0).apply(Point{5, -5}) == Point{5, -5});
  CHECK_THROWS_AS(relax(p, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(relax(p, -0.1), std::invalid_argument);
}

TEST_CASE("single-set DR operator is the projection") {
  const ConvexSet ball = ConvexSet::ball(Point{0, 0}, 1);
  const Point t = dr_operator({ball}).apply(Point{3, 4});
  CHECK(t[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(t[1] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(composite_reflection({ball}).apply(Point{3, 4}) == OperatorExpr::reflection(ball).apply(Point{3, 4}));
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(dr_operator({}), std::invalid_argument);
  CHECK_THROWS_AS(composite_reflection({}), std::invalid_argument);
  CHECK_THROWS_AS(compose({}), std::invalid_argument);
  CHECK_THROWS_AS(dr_operator({x_axis, ConvexSet::ball(Point{0, 0, 0}, 1)}), DimensionMismatch);
  CHECK_THROWS_AS(OperatorExpr::identity(2).apply(Point{1, 2, 3}), DimensionMismatch);
}

TEST_CASE("composition applies factors first-to-last") {
  const OperatorExpr shift_then_project =
      compose({OperatorExpr::reflection(y_axis), OperatorExpr::projection(ConvexSet::halfspace(Point{1, 0}, 0))});
  // R_y (3, 1) = (-3, 1), already in x1 <= 0.
  CHECK(shift_then_project.apply(Point{3, 1}) == Point{-3, 1});
  const OperatorExpr reversed =
      compose({OperatorExpr::projection(ConvexSet::halfspace(Point{1, 0}, 0)), OperatorExpr::reflection(y_axis)});
  CHECK(reversed.apply(Point{3, 1}) == Point{0, 1});
}

TEST_CASE("property: DR operator is half identity plus composite reflection") {
  test::Gen gen(3);
  for (int inst = 0; inst < 20; ++inst) {
    auto sets = sets_through_origin(gen);
    const OperatorExpr t = dr_operator(sets);
    const OperatorExpr v = composite_reflection(sets);
    for (int k = 0; k < 200; ++k) {
      const Point x = gen.point(2, 5.0);
      CHECK(distance(t.apply(x), combine(0.5, x, 0.5, v.apply(x))) <= 1e-12);
    }
  }
}

TEST_CASE("property: DR operators firmly nonexpansive, reflections nonexpansive") {
  test::Gen gen(99);
  for (int inst = 0; inst < 10; ++inst) {
    auto sets = sets_through_origin(gen);
    const OperatorExpr t = dr_operator(sets);
    for (int k = 0; k < 1000; ++k) {
      const Point x = gen.point(2, 8.0);
      const Point y = gen.point(2, 8.0);
      const Point gap = t.apply(x) - t.apply(y);
      CHECK(inner(gap, x - y) >= inner(gap, gap) - 1e-10);
      for (const ConvexSet& c : sets) {
        const OperatorExpr r = OperatorExpr::reflection(c);
        CHECK(distance(r.apply(x), r.apply(y)) <= distance(x, y) + 1e-10);
      }
    }
  }
}

TEST_CASE("property: relaxation and composition preserve common fixed points") {
  test::Gen gen(17);
  const Point origin{0, 0};
  for (int inst = 0; inst < 20; ++inst) {
    auto sets = sets_through_origin(gen);
    std::vector<OperatorExpr> averaged;
    for (const ConvexSet& c : sets) averaged.push_back(relax(OperatorExpr::projection(c), gen.real(0.1, 1.9)));
    const OperatorExpr t = dr_operator(sets);
    CHECK(distance(t.apply(origin), origin) <= 1e-10);
    for (double lambda : {0.5, 1.0, 1.5, 2.0}) CHECK(distance(relax(t, lambda).apply(origin), origin) <= 1e-10);
    CHECK(distance(compose(averaged).apply(origin), origin) <= 1e-10);
    CHECK(distance(composite_reflection(sets).apply(origin), origin) <= 1e-10);
  }
}

TEST_CASE("describe renders the tree") {
  const OperatorExpr p = OperatorExpr::projection(ConvexSet::ball(Point{0, 0}, 1));
  CHECK(relax(p, 1.5).describe() == "relax(P[ball],1.5)");
  CHECK(dr_operator({x_axis, y_axis}).describe() == "DR2");
}
