#include "udr/repro.hpp"

#include "udr/diagnostics.hpp"
#include "udr/harness.hpp"
#include "udr/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace udr::repro {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kFeasTol = 1e-8;
constexpr double kCauchyTol = 1e-10;
constexpr std::size_t kIterBudget = 10'000;

json three_balls() {
  return json::parse(R"({
    "dimension": 2,
    "sets": [
      {"kind": "ball", "center": [0, 0], "radius": 1},
      {"kind": "ball", "center": [1, 0], "radius": 1},
      {"kind": "ball", "center": [0.5, 0.8], "radius": 1}
    ],
    "interior_point": [0.5, 0.3],
    "control": {"rule": "cyclic"},
    "r": 2,
    "x0": [5, 5],
    "stop": {"max_iters": 10000, "displacement_tol": 1e-10, "feasibility_tol": 1e-8}
  })");
}

json five_halfspaces() {
  json sets = json::array();
  for (int i = 0; i < 5; ++i) {
    std::vector<double> a(5, 0.0);
    a[i] = 1.0;
    a[(i + 1) % 5] = 0.5;
    sets.push_back({{"kind", "halfspace"}, {"a", a}, {"b", -1.0}});
  }
  json doc;
  doc["dimension"] = 5;
  doc["sets"] = sets;
  doc["interior_point"] = std::vector<double>(5, -1.0);
  doc["scheme"] = "unrestricted_dr";
  doc["control"] = {{"rule", "cyclic"}};
  doc["r"] = 2;
  doc["x0"] = {3.0, -2.0, 4.0, 1.0, 0.5};
  doc["stop"] = {{"max_iters", 10000}, {"displacement_tol", 1e-10}, {"feasibility_tol", 1e-8}};
  return doc;
}

Document make(std::string name, const json& doc) { return {std::move(name), doc.dump(2) + "\n"}; }

std::string fmt(double v) { return format_double(v); }

CriterionResult result(std::string id, std::string description, bool pass, std::string detail) {
  return {std::move(id), std::move(description), pass, std::move(detail)};
}

struct Loaded {
  FeasibilityProblem problem;
  RunConfig config;
};

Loaded load(const Document& doc) {
  FeasibilityProblem problem = parse_problem(doc.text);
  RunConfig config = parse_run_config(doc.text, problem);
  return {std::move(problem), std::move(config)};
}

/// Runs a document and checks the feasibility and Cauchy-tail conclusions.
CriterionResult converge(const std::string& id, const Document& doc, const fs::path& workdir) {
  const Loaded l = load(doc);
  const IterationTrace trace = execute(l.problem, l.config);
  {
    std::ofstream f(workdir / (doc.name + ".trace.csv"), std::ios::binary | std::ios::trunc);
    write_trace(f, trace);
  }
  const TraceRecord& last = trace.last();
  const FeasibilityReport feas = feasibility_report(l.problem, last.iterate);
  const bool pass = trace.converged() && last.n <= kIterBudget && feas.max <= kFeasTol;
  return result(id, doc.name + " reaches a feasible limit", pass,
                "status=" + to_string(trace.status) + " n=" + std::to_string(last.n) + " max_dist=" + fmt(feas.max) +
                    " last_step=" + fmt(last.displacement));
}

std::vector<CriterionResult> ac1(const fs::path&) {
  std::vector<CriterionResult> out;
  const auto start = std::chrono::steady_clock::now();
  for (const Document& doc : documents("AC-1")) {
    const Loaded l = load(doc);
    const auto reports = run_checks(l.problem, l.config);
    double worst = 0.0;
    std::string failing;
    for (const auto& [label, r] : reports) {
      worst = std::max(worst, r.worst_violation);
      if (!r.pass) failing += " " + r.property_name + ":" + label;
    }
    out.push_back(result("AC-1", doc.name + " operator classes", failing.empty(),
                         std::to_string(reports.size()) + " reports, worst violation " + fmt(worst) +
                             (failing.empty() ? "" : ", failing:" + failing)));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.push_back(result("AC-1", "suite runtime under 10 s", secs < 10.0, fmt(secs) + " s"));
  return out;
}

std::vector<CriterionResult> ac2(const fs::path& workdir) {
  const Document doc = documents("AC-2").front();
  const Loaded l = load(doc);
  const IterationTrace trace = execute(l.problem, l.config);
  {
    std::ofstream f(workdir / (doc.name + ".trace.csv"), std::ios::binary | std::ios::trunc);
    write_trace(f, trace);
  }
  const TraceRecord& last = trace.last();
  return {
      result("AC-2", "composite-Q limit feasible to 1e-8 within 1e4 iterations",
             trace.converged() && last.n <= kIterBudget && last.max_set_distance <= kFeasTol,
             "n=" + std::to_string(last.n) + " max_dist=" + fmt(last.max_set_distance)),
      result("AC-2", "Cauchy tail: last step <= 1e-10", last.displacement <= kCauchyTol,
             "last_step=" + fmt(last.displacement)),
  };
}

std::vector<CriterionResult> converge_all(const std::string& id, const fs::path& workdir) {
  std::vector<CriterionResult> out;
  for (const Document& doc : documents(id)) out.push_back(converge(id, doc, workdir));
  return out;
}

std::vector<CriterionResult> ac6(const fs::path&) {
  const Loaded l = load(documents("AC-6").front());
  const Point p = *l.problem.interior_point();
  const std::uint64_t jf = cover_index(l.config.control);
  double worst_fixed = 0.0;
  for (std::uint64_t n = 0; n <= jf; ++n) {
    const OperatorExpr s = build_S(l.problem, l.config.control, l.config.r, n);
    worst_fixed = std::max(worst_fixed, distance(s.apply(p), p));
  }
  const OperatorExpr q = build_composite_Q(l.problem, l.config.control, l.config.r);
  double worst_dist = 0.0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    Point y = sample_point(l.problem.dim(), 10.0, 6, k);
    for (std::size_t it = 0; it < 100'000; ++it) {
      Point next = q.apply(y);
      const double step = distance(next, y);
      y = std::move(next);
      if (step <= 1e-14) break;
    }
    worst_dist = std::max(worst_dist, l.problem.max_distance(y));
  }
  return {
      result("AC-6", "interior point fixed by S_0..S_jf to 1e-10", worst_fixed <= 1e-10,
             "j_f=" + std::to_string(jf) + " worst=" + fmt(worst_fixed)),
      result("AC-6", "100 fixed points of Q lie in the intersection to 1e-7", worst_dist <= 1e-7,
             "worst max_dist=" + fmt(worst_dist)),
  };
}

std::vector<CriterionResult> ac7(const fs::path&) {
  const Loaded l = load(documents("AC-7").front());
  const OperatorExpr q = build_composite_Q(l.problem, l.config.control, l.config.r);
  const auto series = asymptotic_regularity_series(q, l.config.x0, kIterBudget);
  double worst_rise = 0.0;
  for (std::size_t k = 1; k < series.size(); ++k) worst_rise = std::max(worst_rise, series[k] - series[k - 1]);

  const OperatorExpr refl = OperatorExpr::reflection(ConvexSet::hyperplane(Point{0.0, 1.0}, 0.0));
  const auto flat = asymptotic_regularity_series(refl, Point{1.0, 2.0}, 1000);
  const auto [lo, hi] = std::minmax_element(flat.begin(), flat.end());
  return {
      result("AC-7", "Q series final entry <= 1e-8", series.back() <= 1e-8, "final=" + fmt(series.back())),
      result("AC-7", "Q series nonincreasing (1e-12 slack)", worst_rise <= 1e-12, "worst rise=" + fmt(worst_rise)),
      result("AC-7", "hyperplane reflection series constant positive", *lo > 0.0 && *hi - *lo <= 1e-12,
             "min=" + fmt(*lo) + " max=" + fmt(*hi)),
  };
}

std::vector<CriterionResult> ac8(const fs::path&) {
  bool cover_ok = true;
  for (std::size_t m = 1; m <= 10; ++m) cover_ok = cover_ok && cover_index(ControlMap::cyclic(m)) == m;

  bool window_ok = true;
  std::size_t comparisons = 0;
  for (std::size_t m = 1; m <= 5; ++m) {
    const ControlMap f = ControlMap::cyclic(m);
    for (std::size_t r = 2; r <= 5; ++r) {
      for (std::uint64_t n = 0; n <= 100; ++n) {
        const auto w = window(f, r, n);
        for (std::size_t j = 1; j <= r; ++j) {
          window_ok = window_ok && w[j - 1] == ((r - 1) * n + j - 1) % m + 1;
          ++comparisons;
        }
      }
    }
  }

  bool quasi_ok = is_quasi_periodic(ControlMap::cyclic(3), 3, 100) && !is_quasi_periodic(ControlMap::cyclic(3), 2, 100);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ControlMap rb = ControlMap::random_block(2, 3, seed);
    quasi_ok = quasi_ok && is_quasi_periodic(rb, 5, 1000);
  }
  return {
      result("AC-8", "cover_index(Cyclic(m)) == m for m = 1..10", cover_ok, ""),
      result("AC-8", "window matches f((r-1)n + j - 1) exhaustively", window_ok,
             std::to_string(comparisons) + " comparisons"),
      result("AC-8", "quasi-periodicity verdicts", quasi_ok, "cyclic M=m true, M=2 false, random_block 2M-1 true"),
  };
}

std::vector<CriterionResult> ac9(const fs::path& workdir) {
  std::vector<CriterionResult> out;
  for (const char* id : {"AC-2", "AC-3", "AC-4", "AC-5"}) {
    for (const Document& doc : documents(id)) {
      std::string bytes[2];
      for (std::string& b : bytes) {
        const Loaded l = load(doc);
        std::ostringstream os;
        write_trace(os, execute(l.problem, l.config));
        b = os.str();
      }
      const fs::path first = workdir / (doc.name + ".run1.trace.csv");
      const fs::path second = workdir / (doc.name + ".run2.trace.csv");
      std::ofstream(first, std::ios::binary) << bytes[0];
      std::ofstream(second, std::ios::binary) << bytes[1];
      const bool same = read_file(first) == read_file(second);
      out.push_back(result("AC-9", doc.name + " trace byte-identical across runs", same,
                           std::to_string(bytes[0].size()) + " bytes"));
    }
  }
  return out;
}

} // namespace

std::vector<std::string> experiment_ids() {
  return {"AC-1", "AC-2", "AC-3", "AC-4", "AC-5", "AC-6", "AC-7", "AC-8", "AC-9"};
}

std::string catalog_document(std::size_t dim, std::uint64_t seed) {
  CounterRng rng(seed, dim);
  auto vec = [&](double lo, double hi) {
    std::vector<double> v(dim);
    for (double& x : v) x = rng.uniform(lo, hi);
    return v;
  };
  json sets = json::array();
  sets.push_back({{"kind", "ball"}, {"center", vec(-2.0, 2.0)}, {"radius", 1.5}});
  sets.push_back({{"kind", "halfspace"}, {"a", vec(0.5, 1.0)}, {"b", 0.5}});
  sets.push_back({{"kind", "hyperplane"}, {"a", vec(-1.0, 1.0)}, {"b", -0.3}});
  std::vector<double> lo = vec(-2.0, -0.5);
  std::vector<double> hi = vec(0.5, 2.0);
  sets.push_back({{"kind", "box"}, {"lo", lo}, {"hi", hi}});
  json rows = json::array({vec(-1.0, 1.0), vec(-1.0, 1.0)});
  sets.push_back({{"kind", "affine"}, {"A", rows}, {"b", {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}}});

  json doc;
  doc["dimension"] = dim;
  doc["sets"] = sets;
  doc["scheme"] = "unrestricted_dr";
  doc["control"] = {{"rule", "cyclic"}};
  doc["r"] = 2;
  doc["x0"] = "origin";
  doc["stop"] = {{"max_iters", 1000}};
  doc["check"] = {{"samples", 1000}, {"seed", seed}, {"tolerance", 1e-10}};
  return doc.dump(2) + "\n";
}

std::vector<Document> documents(const std::string& id) {
  if (id == "AC-1") {
    std::vector<Document> out;
    for (std::size_t dim : {2, 5, 50}) out.push_back({"ac1_catalog_d" + std::to_string(dim), catalog_document(dim, 1)});
    return out;
  }
  if (id == "AC-2" || id == "AC-6" || id == "AC-7") {
    json doc = three_balls();
    doc["scheme"] = "composite_q";
    const std::string stem = id == "AC-2" ? "ac2_three_balls_q" : id == "AC-6" ? "ac6_three_balls" : "ac7_three_balls";
    return {make(stem, doc)};
  }
  if (id == "AC-3") {
    json doc = three_balls();
    doc["scheme"] = "unrestricted_dr";
    return {make("ac3_three_balls_cyclic", doc), make("ac3_five_halfspaces_cyclic", five_halfspaces())};
  }
  if (id == "AC-4") {
    std::vector<Document> out;
    for (std::uint64_t seed : {11, 22, 33, 44, 55}) {
      json doc = three_balls();
      doc["scheme"] = "unrestricted_dr";
      doc["control"] = {{"rule", "random_block"}, {"m", 3}, {"M", 5}, {"seed", seed}};
      out.push_back(make("ac4_random_block_seed" + std::to_string(seed), doc));
    }
    return out;
  }
  if (id == "AC-5") {
    json interlaced = three_balls();
    interlaced["scheme"] = "product";
    interlaced["operators"] = json::array({
        {{"kind", "s_family"}},
        {{"kind", "projection"}, {"set", 1}},
        {{"kind", "relaxed_projection"}, {"set", 2}, {"lambda", 1.5}},
    });
    // k = j_f + 3 = 6 operators for the cyclic control on three sets.
    interlaced["product_control"] = {{"rule", "random_block"}, {"m", 6}, {"M", 12}, {"seed", 5}};

    json with_q = three_balls();
    with_q["scheme"] = "product";
    with_q["operators"] = json::array({{{"kind", "Q"}}, {{"kind", "projection"}, {"set", 1}}});
    with_q["product_control"] = {{"rule", "random_block"}, {"m", 2}, {"M", 4}, {"seed", 5}};
    return {make("ac5_interlaced_s_family", interlaced), make("ac5_q_and_projection", with_q)};
  }
  if (id == "AC-8" || id == "AC-9") return {};
  throw std::invalid_argument("unknown experiment id '" + id + "'");
}

std::vector<CriterionResult> run(const std::string& id, const fs::path& workdir) {
  fs::create_directories(workdir);
  if (id == "AC-1") return ac1(workdir);
  if (id == "AC-2") return ac2(workdir);
  if (id == "AC-3" || id == "AC-4" || id == "AC-5") return converge_all(id, workdir);
  if (id == "AC-6") return ac6(workdir);
  if (id == "AC-7") return ac7(workdir);
  if (id == "AC-8") return ac8(workdir);
  if (id == "AC-9") return ac9(workdir);
  throw std::invalid_argument("unknown experiment id '" + id + "'");
}

} // namespace udr::repro
