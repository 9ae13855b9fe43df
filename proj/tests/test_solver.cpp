#include "udr/solver.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace udr;

namespace {

FeasibilityProblem three_balls() {
  return FeasibilityProblem({ConvexSet::ball(Point{0, 0}, 1), ConvexSet::ball(Point{1, 0}, 1),
                             ConvexSet::ball(Point{0.5, 0.8}, 1)},
                            Point{0.5, 0.3});
}

// Reference oracle: plain unrestricted DR recurrence with no stopping logic.
Point reference_dr(const FeasibilityProblem& problem, const ControlMap& f, std::size_t r, Point x, std::size_t steps) {
  for (std::size_t n = 0; n < steps; ++n) {
    std::vector<ConvexSet> sets;
    for (std::size_t j = 1; j <= r; ++j) sets.push_back(problem.set(f.index_at((r - 1) * n + j - 1)));
    Point v = x;
    for (const ConvexSet& c : sets) v = combine(2.0, c.project(v), -1.0, v);
    x = combine(0.5, x, 0.5, v);
  }
  return x;
}

void check_trace_shape(const IterationTrace& trace, const StopRule& stop) {
  REQUIRE_FALSE(trace.steps.empty());
  CHECK(trace.steps.size() <= stop.max_iters + 1);
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    CHECK(trace.steps[i].n == i);
    CHECK(trace.steps[i].displacement >= 0.0);
  }
  if (trace.status == TerminalStatus::feasible || trace.status == TerminalStatus::converged_displacement) {
    CHECK(trace.last().max_set_distance <= stop.feasibility_tol);
  }
}

} // namespace

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(FeasibilityProblem({}), std::invalid_argument);
  CHECK_THROWS_AS(FeasibilityProblem({ConvexSet::ball(Point{0, 0}, 1), ConvexSet::ball(Point{0, 0, 0}, 1)}),
                  std::invalid_argument);
  // Interior point on the boundary of the first ball.
  CHECK_THROWS_AS(FeasibilityProblem({ConvexSet::ball(Point{0, 0}, 1)}, Point{1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(FeasibilityProblem({ConvexSet::hyperplane(Point{0, 1}, 0)}, Point{0, 0}), std::invalid_argument);
  CHECK_NOTHROW(three_balls());
  CHECK_THROWS_AS(three_balls().set(4), std::out_of_range);
}

TEST_CASE("build_S selects the window's sets") {
  const FeasibilityProblem p = three_balls();
  const ControlMap f = ControlMap::cyclic(3);
  const OperatorExpr op0 = build_S(p, f, 2, 0);
  const auto& s0 = std::get<DrOp>(op0.node().value);
  REQUIRE(s0.sets.size() == 2);
  CHECK(std::get<Ball>(s0.sets[0].shape()).center == Point{0, 0});
  CHECK(std::get<Ball>(s0.sets[1].shape()).center == Point{1, 0});
  const OperatorExpr op1 = build_S(p, f, 2, 1);
  const auto& s1 = std::get<DrOp>(op1.node().value);
  CHECK(std::get<Ball>(s1.sets[0].shape()).center == Point{1, 0});
  CHECK(std::get<Ball>(s1.sets[1].shape()).center == Point{0.5, 0.8});

  const FeasibilityProblem single({ConvexSet::ball(Point{0, 0}, 1)});
  const OperatorExpr s = build_S(single, ControlMap::explicit_prefix({1}), 2, 0);
  // DR over (C, C) fixes exactly the members of C.
  CHECK(s.apply(Point{0.3, 0.2}) == Point{0.3, 0.2});
  CHECK(distance(s.apply(Point{3, 4}), Point{3, 4}) > 0.1);
}

TEST_CASE("build_composite_Q factor structure") {
  const FeasibilityProblem p = three_balls();
  const OperatorExpr q = build_composite_Q(p, ControlMap::cyclic(3), 2);
  CHECK(std::get<CompositionOp>(q.node().value).factors.size() == 4);
  CHECK(q.apply(Point{0.5, 0.3}) == Point{0.5, 0.3});

  const FeasibilityProblem single({ConvexSet::ball(Point{0, 0}, 1)});
  CHECK(std::get<CompositionOp>(build_composite_Q(single, ControlMap::cyclic(1), 2).node().value).factors.size() == 2);
}

TEST_CASE("unrestricted DR: start in the intersection") {
  const IterationTrace t = run_unrestricted_dr(three_balls(), ControlMap::cyclic(3), 2, Point{0.5, 0.3});
  CHECK(t.status == TerminalStatus::feasible);
  CHECK(t.steps.size() == 1);
}

TEST_CASE("unrestricted DR: two halfspaces against a reference run") {
  const FeasibilityProblem p({ConvexSet::halfspace(Point{-1, 0}, -1), ConvexSet::halfspace(Point{0, -1}, -1)});
  const ControlMap f = ControlMap::cyclic(2);
  const IterationTrace t = run_unrestricted_dr(p, f, 2, Point{0, 0});
  check_trace_shape(t, StopRule{});
  CHECK(t.converged());
  CHECK(p.max_distance(t.last().iterate) <= 1e-8);
  const Point ref = reference_dr(p, f, 2, Point{0, 0}, 100'000);
  CHECK(p.max_distance(ref) <= 1e-8);
  CHECK(distance(ref, t.last().iterate) <= 1e-8);
}

TEST_CASE("unrestricted DR: two balls lens") {
  const FeasibilityProblem p({ConvexSet::ball(Point{0, 0}, 2), ConvexSet::ball(Point{3, 0}, 2)});
  const ControlMap f = ControlMap::cyclic(2);
  const IterationTrace t = run_unrestricted_dr(p, f, 2, Point{10, 10});
  CHECK(t.converged());
  const Point x = t.last().iterate;
  CHECK(p.max_distance(x) <= 1e-8);
  CHECK(x[0] >= 1.0 - 1e-8);
  CHECK(x[0] <= 2.0 + 1e-8);
  CHECK(distance(reference_dr(p, f, 2, Point{10, 10}, 100'000), x) <= 1e-8);
}

TEST_CASE("composite scheme on three balls") {
  const FeasibilityProblem p = three_balls();
  const IterationTrace t = run_composite(p, ControlMap::cyclic(3), 2, Point{5, 5});
  check_trace_shape(t, StopRule{});
  CHECK(t.converged());
  CHECK(t.last().max_set_distance <= 1e-8);
  CHECK(t.last().displacement <= 1e-8);
  CHECK(t.last().operator_id == "Q");

  const IterationTrace t0 = run_composite(p, ControlMap::cyclic(3), 2, Point{0.5, 0.3});
  CHECK(t0.status == TerminalStatus::feasible);
  CHECK(t0.steps.size() == 1);
}

TEST_CASE("unrestricted product") {
  const FeasibilityProblem p({ConvexSet::halfspace(Point{-1, 0}, -1), ConvexSet::halfspace(Point{0, -1}, -1)});
  const std::vector<OperatorExpr> projections{OperatorExpr::projection(p.set(1)), OperatorExpr::projection(p.set(2))};

  SUBCASE("k = 1 is Picard iteration") {
    const FeasibilityProblem single({ConvexSet::ball(Point{0, 0}, 1)});
    const IterationTrace t = run_unrestricted_product(single, {OperatorExpr::projection(single.set(1))},
                                                      ControlMap::cyclic(1), Point{3, 4});
    CHECK(t.converged());
    CHECK(t.steps[1].operator_id == "T1");
    CHECK(distance(t.steps[1].iterate, Point{0.6, 0.8}) <= 1e-15);
  }
  SUBCASE("two projections with random blocks") {
    const IterationTrace t =
        run_unrestricted_product(p, projections, ControlMap::random_block(2, 2, 3), Point{-4, -7});
    CHECK(t.converged());
    CHECK(p.max_distance(t.last().iterate) <= 1e-8);
  }
  SUBCASE("control range must match the family") {
    CHECK_THROWS_AS(run_unrestricted_product(p, projections, ControlMap::cyclic(3), Point{0, 0}), std::out_of_range);
    CHECK_THROWS_AS(run_unrestricted_product(p, {}, ControlMap::cyclic(1), Point{0, 0}), std::invalid_argument);
  }
}

TEST_CASE("stop rules") {
  const FeasibilityProblem p = three_balls();
  SUBCASE("max_iters = 1 from an infeasible start") {
    RunOptions opts;
    opts.stop.max_iters = 1;
    const IterationTrace t = run_composite(p, ControlMap::cyclic(3), 2, Point{50, 50}, opts);
    CHECK(t.status == TerminalStatus::max_iters);
    CHECK(t.steps.size() == 2);
  }
  SUBCASE("displacement_tol = 0 stops on feasibility alone") {
    RunOptions opts;
    opts.stop.displacement_tol = 0.0;
    const IterationTrace t = run_unrestricted_dr(p, ControlMap::cyclic(3), 2, Point{5, 5}, opts);
    CHECK(t.status == TerminalStatus::feasible);
    CHECK(t.last().max_set_distance <= 1e-8);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(run_composite(p, ControlMap::cyclic(3), 2, Point{1, 2, 3}), DimensionMismatch);
  }
}

TEST_CASE("empty-interior instances run and report") {
  // A line tangent to the unit disk: the intersection is the single point (1, 0).
  const FeasibilityProblem p({ConvexSet::ball(Point{0, 0}, 1), ConvexSet::hyperplane(Point{1, 0}, 1)});
  RunOptions opts;
  opts.stop.max_iters = 2000;
  const IterationTrace t = run_unrestricted_dr(p, ControlMap::cyclic(2), 2, Point{3, 2}, opts);
  check_trace_shape(t, opts.stop);
  CHECK(t.steps.size() >= 2);
}

TEST_CASE("certifier residual is recorded") {
  const FeasibilityProblem p = three_balls();
  RunOptions opts;
  opts.certifier = OperatorExpr::projection(p.set(1));
  const IterationTrace t = run_composite(p, ControlMap::cyclic(3), 2, Point{5, 5}, opts);
  for (const TraceRecord& rec : t.steps) REQUIRE(rec.certifier_residual.has_value());
  CHECK(*t.steps.front().certifier_residual == doctest::Approx(norm(Point{5, 5}) - 1.0));
  CHECK(*t.last().certifier_residual <= 1e-8);
}

TEST_CASE("property: Fejer monotonicity toward a common point for all schemes") {
  test::Gen gen(31);
  const FeasibilityProblem p = three_balls();
  const Point common = *p.interior_point();
  const ControlMap f = ControlMap::cyclic(3);
  const std::vector<OperatorExpr> family{build_S(p, f, 2, 0), build_S(p, f, 2, 1), OperatorExpr::projection(p.set(3)),
                                         relax(OperatorExpr::projection(p.set(2)), 1.5)};
  auto monotone = [&](const IterationTrace& t) {
    for (std::size_t i = 1; i < t.steps.size(); ++i) {
      CHECK(distance(t.steps[i].iterate, common) <= distance(t.steps[i - 1].iterate, common) + 1e-10);
    }
  };
  for (int trial = 0; trial < 20; ++trial) {
    const Point x0 = gen.point(2, 20.0);
    const std::uint64_t seed = gen.count(0, 1000);
    monotone(run_unrestricted_dr(p, f, 2, x0));
    monotone(run_unrestricted_dr(p, ControlMap::random_block(3, 5, seed), 3, x0));
    monotone(run_composite(p, f, 2, x0));
    monotone(run_unrestricted_product(p, family, ControlMap::random_block(4, 6, seed), x0));
  }
}
