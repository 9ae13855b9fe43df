#include "udr/harness.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>

namespace udr {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

IterationTrace execute(const FeasibilityProblem& problem, const RunConfig& config) {
  RunOptions opts{config.stop, std::nullopt};
  if (config.certifier) opts.certifier = config.certifier->op;
  switch (config.scheme) {
  case Scheme::unrestricted_dr: return run_unrestricted_dr(problem, config.control, config.r, config.x0, opts);
  case Scheme::composite_q: return run_composite(problem, config.control, config.r, config.x0, opts);
  case Scheme::product: {
    std::vector<OperatorExpr> ops;
    for (const NamedOperator& n : config.operators) ops.push_back(n.op);
    return run_unrestricted_product(problem, ops, *config.product_control, config.x0, opts);
  }
  }
  throw std::logic_error("unknown scheme");
}

std::vector<LabelledReport> run_checks(const FeasibilityProblem& problem, const RunConfig& config) {
  SamplePlan plan;
  plan.samples = config.check.samples;
  plan.seed = config.check.seed;
  plan.scale = config.check.scale.value_or(default_sample_scale(problem));
  plan.tolerance = config.check.tolerance;

  std::vector<LabelledReport> out;
  const auto& interior = problem.interior_point();
  auto firm = [&](const std::string& label, const OperatorExpr& op) {
    out.push_back({label, check_firmly_nonexpansive(op, plan)});
  };
  auto nonexp = [&](const std::string& label, const OperatorExpr& op) {
    out.push_back({label, check_nonexpansive(op, plan)});
  };
  auto quasi = [&](const std::string& label, const OperatorExpr& op) {
    if (interior) out.push_back({label, check_quasi_nonexpansive(op, *interior, plan)});
  };

  for (Index i = 1; i <= problem.size(); ++i) {
    const std::string id = std::to_string(i);
    const OperatorExpr p = OperatorExpr::projection(problem.set(i));
    firm("P" + id, p);
    nonexp("P" + id, p);
    nonexp("R" + id, OperatorExpr::reflection(problem.set(i)));
    for (double lambda : {0.25, 1.0, 1.75}) nonexp("P" + id + "@" + format_double(lambda), relax(p, lambda));
  }

  const std::uint64_t jf = cover_index(config.control);
  for (std::uint64_t n = 0; n <= jf; ++n) {
    const OperatorExpr s = build_S(problem, config.control, config.r, n);
    std::vector<ConvexSet> sets;
    for (Index i : window(config.control, config.r, n)) sets.push_back(problem.set(i));
    const std::string id = "S" + std::to_string(n);
    firm(id, s);
    quasi(id, s);
    nonexp("V" + std::to_string(n), composite_reflection(sets));
  }
  const OperatorExpr q = build_composite_Q(problem, config.control, config.r);
  nonexp("Q", q);
  quasi("Q", q);

  for (const NamedOperator& n : config.operators) {
    nonexp(n.label, n.op);
    quasi(n.label, n.op);
  }
  if (config.certifier) nonexp("certifier:" + config.certifier->label, config.certifier->op);
  return out;
}

fs::path default_trace_path(const fs::path& document) {
  fs::path p = document;
  p.replace_extension(".trace.csv");
  return p;
}

namespace {

fs::path resolve_trace(const fs::path& document, const RunConfig& cfg, const std::optional<fs::path>& override_path) {
  if (override_path) return *override_path;
  if (cfg.trace_path) {
    fs::path p(*cfg.trace_path);
    return p.is_absolute() ? p : document.parent_path() / p;
  }
  return default_trace_path(document);
}

} // namespace

int run_document(const fs::path& document, const std::optional<fs::path>& trace_override, std::ostream& out,
                 std::ostream& err) {
  std::optional<FeasibilityProblem> problem;
  std::optional<RunConfig> cfg;
  try {
    const std::string text = read_file(document);
    problem = parse_problem(text);
    cfg = parse_run_config(text, *problem);
  } catch (const std::exception& e) {
    err << document.string() << ": input error: " << e.what() << '\n';
    return kExitInputError;
  }

  IterationTrace trace;
  try {
    trace = execute(*problem, *cfg);
  } catch (const std::exception& e) {
    err << document.string() << ": run error: " << e.what() << '\n';
    return kExitInputError;
  }
  const fs::path trace_path = resolve_trace(document, *cfg, trace_override);
  {
    std::ofstream f(trace_path, std::ios::binary | std::ios::trunc);
    if (!f) {
      err << "cannot write trace " << trace_path.string() << '\n';
      return kExitInputError;
    }
    write_trace(f, trace);
    if (!f) {
      err << "failed writing trace " << trace_path.string() << '\n';
      return kExitInputError;
    }
  }
  const TraceRecord& last = trace.last();
  out << "status: " << to_string(trace.status) << '\n'
      << "iterations: " << last.n << '\n'
      << "max_set_distance: " << format_double(last.max_set_distance) << '\n';
  if (last.certifier_residual) out << "certifier_residual: " << format_double(*last.certifier_residual) << '\n';
  out << "trace: " << trace_path.string() << '\n';
  return trace.converged() ? kExitSuccess : kExitNotConverged;
}

int check_document(const fs::path& document, std::ostream& out, std::ostream& err) {
  std::vector<LabelledReport> reports;
  try {
    const std::string text = read_file(document);
    const FeasibilityProblem problem = parse_problem(text);
    const RunConfig cfg = parse_run_config(text, problem);
    reports = run_checks(problem, cfg);
  } catch (const std::exception& e) {
    err << document.string() << ": input error: " << e.what() << '\n';
    return kExitInputError;
  }
  write_reports(out, reports);
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.report.pass; });
  return ok ? kExitSuccess : kExitNotConverged;
}

int run_batch(const fs::path& dir, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(dir)) {
    err << dir.string() << ": not a directory\n";
    return kExitInputError;
  }
  std::vector<fs::path> docs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") docs.push_back(entry.path());
  }
  std::sort(docs.begin(), docs.end());

  struct Job {
    int code;
    std::string out;
    std::string err;
  };
  std::vector<std::future<Job>> jobs;
  for (const fs::path& doc : docs) {
    jobs.push_back(std::async(std::launch::async, [doc] {
      std::ostringstream o, e;
      const int code = run_document(doc, std::nullopt, o, e);
      return Job{code, o.str(), e.str()};
    }));
  }
  int worst = kExitSuccess;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    Job job = jobs[i].get();
    out << "== " << docs[i].filename().string() << " (exit " << job.code << ")\n" << job.out;
    err << job.err;
    worst = std::max(worst, job.code);
  }
  return worst;
}

} // namespace udr
