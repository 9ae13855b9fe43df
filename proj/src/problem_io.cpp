#include "udr/problem_io.hpp"

#include <json.hpp>

#include <charconv>

#include <set>

namespace udr {

using nlohmann::json;

ParseError::ParseError(const std::string& location, const std::string& message)
    : std::runtime_error(location.empty() ? message : location + ": " + message), location_(location) {}

std::string to_string(Scheme s) {
  switch (s) {
  case Scheme::unrestricted_dr: return "unrestricted_dr";
  case Scheme::composite_q: return "composite_q";
  case Scheme::product: return "product";
  }
  return "unknown";
}

namespace {

json parse_json(std::string_view text) {
  try {
    json doc = json::parse(text);
    if (!doc.is_object()) throw ParseError("", "document must be an object");
    return doc;
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where, std::string("missing field '") + key + "'");
  return *it;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where, "expected a number");
  return v.get<double>();
}

std::uint64_t as_count(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ParseError(where, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

Point as_point(const json& v, std::size_t dim, const std::string& where) {
  if (!v.is_array()) throw ParseError(where, "expected an array of numbers");
  if (v.size() != dim) {
    throw ParseError(where, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(v.size()));
  }
  std::vector<double> coords;
  for (std::size_t i = 0; i < v.size(); ++i) coords.push_back(as_number(v[i], where + "[" + std::to_string(i) + "]"));
  try {
    return Point(std::move(coords));
  } catch (const std::invalid_argument& e) {
    throw ParseError(where, e.what());
  }
}

ConvexSet parse_set(const json& s, std::size_t dim, const std::string& where) {
  const json& kind_field = field(s, "kind", where);
  if (!kind_field.is_string()) throw ParseError(where + ".kind", "expected a string");
  const std::string kind = kind_field.get<std::string>();
  try {
    if (kind == "halfspace" || kind == "hyperplane") {
      Point a = as_point(field(s, "a", where), dim, where + ".a");
      const double b = as_number(field(s, "b", where), where + ".b");
      return kind == "halfspace" ? ConvexSet::halfspace(std::move(a), b) : ConvexSet::hyperplane(std::move(a), b);
    }
    if (kind == "ball") {
      return ConvexSet::ball(as_point(field(s, "center", where), dim, where + ".center"),
                             as_number(field(s, "radius", where), where + ".radius"));
    }
    if (kind == "box") {
      return ConvexSet::box(as_point(field(s, "lo", where), dim, where + ".lo"),
                            as_point(field(s, "hi", where), dim, where + ".hi"));
    }
    if (kind == "affine") {
      const json& rows = field(s, "A", where);
      const json& rhs = field(s, "b", where);
      if (!rows.is_array() || !rhs.is_array()) throw ParseError(where, "affine A and b must be arrays");
      std::vector<Point> a;
      std::vector<double> b;
      for (std::size_t i = 0; i < rows.size(); ++i) a.push_back(as_point(rows[i], dim, where + ".A[" + std::to_string(i) + "]"));
      for (std::size_t i = 0; i < rhs.size(); ++i) b.push_back(as_number(rhs[i], where + ".b[" + std::to_string(i) + "]"));
      return ConvexSet::affine(std::move(a), std::move(b));
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(where, e.what());
  }
  throw ParseError(where + ".kind", "unknown set kind '" + kind + "'");
}

json point_json(const Point& p) { return json(p.values()); }

json set_json(const ConvexSet& set) {
  json out;
  out["kind"] = kind_name(set.kind());
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Halfspace> || std::is_same_v<T, Hyperplane>) {
          out["a"] = point_json(s.a);
          out["b"] = s.b;
        } else if constexpr (std::is_same_v<T, Ball>) {
          out["center"] = point_json(s.center);
          out["radius"] = s.radius;
        } else if constexpr (std::is_same_v<T, Box>) {
          out["lo"] = point_json(s.lo);
          out["hi"] = point_json(s.hi);
        } else {
          json rows = json::array();
          for (const Point& row : s.rows) rows.push_back(point_json(row));
          out["A"] = rows;
          out["b"] = s.rhs;
        }
      },
      set.shape());
  return out;
}

ControlMap parse_control(const json& c, std::size_t default_m, const std::string& where) {
  const json& rule_field = field(c, "rule", where);
  if (!rule_field.is_string()) throw ParseError(where + ".rule", "expected a string");
  const std::string rule = rule_field.get<std::string>();
  auto count_or = [&](const char* key, std::uint64_t fallback) {
    auto it = c.find(key);
    return it == c.end() ? fallback : as_count(*it, where + "." + key);
  };
  try {
    if (rule == "cyclic") return ControlMap::cyclic(count_or("m", default_m));
    if (rule == "explicit") {
      const json& prefix = field(c, "prefix", where);
      if (!prefix.is_array()) throw ParseError(where + ".prefix", "expected an array");
      std::vector<Index> idx;
      for (std::size_t i = 0; i < prefix.size(); ++i) idx.push_back(as_count(prefix[i], where + ".prefix"));
      return ControlMap::explicit_prefix(std::move(idx));
    }
    if (rule == "random_block") {
      return ControlMap::random_block(count_or("m", default_m), as_count(field(c, "M", where), where + ".M"),
                                      count_or("seed", 0));
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(where, e.what());
  }
  throw ParseError(where + ".rule", "unknown control rule '" + rule + "'");
}

Index set_index(const json& v, const FeasibilityProblem& problem, const std::string& where) {
  const std::uint64_t i = as_count(v, where);
  if (i < 1 || i > problem.size()) {
    throw ParseError(where, "set index " + std::to_string(i) + " outside {1.." + std::to_string(problem.size()) + "}");
  }
  return static_cast<Index>(i);
}

/// Expands one operator spec; "s_family" yields S_0, ..., S_{j_f}.
std::vector<NamedOperator> parse_operator(const json& spec, const FeasibilityProblem& problem, const ControlMap& f,
                                          std::size_t r, const std::string& where) {
  const json& kind_field = field(spec, "kind", where);
  if (!kind_field.is_string()) throw ParseError(where + ".kind", "expected a string");
  const std::string kind = kind_field.get<std::string>();
  try {
    if (kind == "identity") return {{"Id", OperatorExpr::identity(problem.dim())}};
    if (kind == "projection") {
      const Index i = set_index(field(spec, "set", where), problem, where + ".set");
      return {{"P" + std::to_string(i), OperatorExpr::projection(problem.set(i))}};
    }
    if (kind == "reflection") {
      const Index i = set_index(field(spec, "set", where), problem, where + ".set");
      return {{"R" + std::to_string(i), OperatorExpr::reflection(problem.set(i))}};
    }
    if (kind == "relaxed_projection") {
      const Index i = set_index(field(spec, "set", where), problem, where + ".set");
      const double lambda = as_number(field(spec, "lambda", where), where + ".lambda");
      char buf[32];
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, lambda);
      return {{"P" + std::to_string(i) + "@" + std::string(buf, end), relax(OperatorExpr::projection(problem.set(i)), lambda)}};
    }
    if (kind == "dr") {
      const json& idx = field(spec, "sets", where);
      if (!idx.is_array() || idx.empty()) throw ParseError(where + ".sets", "expected a nonempty array");
      std::vector<ConvexSet> sets;
      std::string label = "DR[";
      for (std::size_t j = 0; j < idx.size(); ++j) {
        const Index i = set_index(idx[j], problem, where + ".sets");
        sets.push_back(problem.set(i));
        label += (j ? ";" : "") + std::to_string(i);
      }
      return {{label + "]", dr_operator(std::move(sets))}};
    }
    if (kind == "S") {
      const std::uint64_t n = as_count(field(spec, "n", where), where + ".n");
      return {{"S" + std::to_string(n), build_S(problem, f, r, n)}};
    }
    if (kind == "s_family") {
      std::vector<NamedOperator> out;
      const std::uint64_t jf = cover_index(f);
      for (std::uint64_t n = 0; n <= jf; ++n) out.push_back({"S" + std::to_string(n), build_S(problem, f, r, n)});
      return out;
    }
    if (kind == "Q") return {{"Q", build_composite_Q(problem, f, r)}};
  } catch (const std::invalid_argument& e) {
    throw ParseError(where, e.what());
  } catch (const std::out_of_range& e) {
    throw ParseError(where, e.what());
  }
  throw ParseError(where + ".kind", "unknown operator kind '" + kind + "'");
}

Scheme parse_scheme(const json& v) {
  if (!v.is_string()) throw ParseError("scheme", "expected a string");
  const std::string s = v.get<std::string>();
  if (s == "unrestricted_dr") return Scheme::unrestricted_dr;
  if (s == "composite_q") return Scheme::composite_q;
  if (s == "product") return Scheme::product;
  throw ParseError("scheme", "unknown scheme '" + s + "'");
}

Point parse_x0(const json& v, std::size_t dim) {
  if (v.is_string()) {
    if (v.get<std::string>() == "origin") return Point::zeros(dim);
    throw ParseError("x0", "expected \"origin\", a coordinate array or {\"random\": {...}}");
  }
  if (v.is_array()) return as_point(v, dim, "x0");
  const json& rnd = field(v, "random", "x0");
  const std::uint64_t seed = as_count(field(rnd, "seed", "x0.random"), "x0.random.seed");
  const double scale = as_number(field(rnd, "scale", "x0.random"), "x0.random.scale");
  if (!(scale > 0.0)) throw ParseError("x0.random.scale", "must be positive");
  return sample_point(dim, scale, seed, 0);
}

} // namespace

FeasibilityProblem parse_problem(std::string_view text) {
  const json doc = parse_json(text);
  const std::uint64_t dim = as_count(field(doc, "dimension", ""), "dimension");
  if (dim == 0) throw ParseError("dimension", "must be positive");
  const json& sets = field(doc, "sets", "");
  if (!sets.is_array() || sets.empty()) throw ParseError("sets", "expected a nonempty array");
  std::vector<ConvexSet> parsed;
  for (std::size_t i = 0; i < sets.size(); ++i) parsed.push_back(parse_set(sets[i], dim, "sets[" + std::to_string(i) + "]"));
  std::optional<Point> interior;
  if (auto it = doc.find("interior_point"); it != doc.end()) interior = as_point(*it, dim, "interior_point");
  try {
    return FeasibilityProblem(std::move(parsed), std::move(interior));
  } catch (const std::invalid_argument& e) {
    throw ParseError("interior_point", e.what());
  }
}

RunConfig parse_run_config(std::string_view text, const FeasibilityProblem& problem) {
  const json doc = parse_json(text);
  RunConfig cfg;
  cfg.scheme = parse_scheme(field(doc, "scheme", ""));
  cfg.control = doc.contains("control") ? parse_control(doc["control"], problem.size(), "control")
                                        : ControlMap::cyclic(problem.size());
  if (cfg.control.range_size() > problem.size()) {
    throw ParseError("control", "range {1.." + std::to_string(cfg.control.range_size()) + "} exceeds the " +
                                    std::to_string(problem.size()) + " sets");
  }
  if (auto it = doc.find("r"); it != doc.end()) cfg.r = as_count(*it, "r");
  if (cfg.r <= 1) throw ParseError("r", "must exceed 1");
  cfg.x0 = doc.contains("x0") ? parse_x0(doc["x0"], problem.dim()) : Point::zeros(problem.dim());

  if (auto it = doc.find("stop"); it != doc.end()) {
    const json& s = *it;
    if (!s.is_object()) throw ParseError("stop", "expected an object");
    if (s.contains("max_iters")) cfg.stop.max_iters = as_count(s["max_iters"], "stop.max_iters");
    if (s.contains("displacement_tol")) cfg.stop.displacement_tol = as_number(s["displacement_tol"], "stop.displacement_tol");
    if (s.contains("feasibility_tol")) cfg.stop.feasibility_tol = as_number(s["feasibility_tol"], "stop.feasibility_tol");
    if (cfg.stop.max_iters == 0) throw ParseError("stop.max_iters", "must be positive");
    if (cfg.stop.displacement_tol < 0.0 || cfg.stop.feasibility_tol < 0.0) throw ParseError("stop", "tolerances must be nonnegative");
  }

  if (auto it = doc.find("operators"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("operators", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      auto ops = parse_operator((*it)[i], problem, cfg.control, cfg.r, "operators[" + std::to_string(i) + "]");
      cfg.operators.insert(cfg.operators.end(), ops.begin(), ops.end());
    }
  }
  if (cfg.scheme == Scheme::product) {
    if (cfg.operators.empty()) throw ParseError("operators", "product scheme needs at least one operator");
    const json& h = field(doc, "product_control", "");
    cfg.product_control = parse_control(h, cfg.operators.size(), "product_control");
    if (cfg.product_control->range_size() != cfg.operators.size()) {
      throw ParseError("product_control", "range {1.." + std::to_string(cfg.product_control->range_size()) +
                                              "} does not match " + std::to_string(cfg.operators.size()) + " operators");
    }
  }
  if (auto it = doc.find("certifier"); it != doc.end()) {
    auto ops = parse_operator(*it, problem, cfg.control, cfg.r, "certifier");
    if (ops.size() != 1) throw ParseError("certifier", "must name a single operator");
    cfg.certifier = ops.front();
  }
  if (auto it = doc.find("trace"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("trace", "expected a path string");
    cfg.trace_path = it->get<std::string>();
  }
  if (auto it = doc.find("check"); it != doc.end()) {
    const json& c = *it;
    if (!c.is_object()) throw ParseError("check", "expected an object");
    if (c.contains("samples")) cfg.check.samples = as_count(c["samples"], "check.samples");
    if (c.contains("seed")) cfg.check.seed = as_count(c["seed"], "check.seed");
    if (c.contains("scale")) cfg.check.scale = as_number(c["scale"], "check.scale");
    if (c.contains("tolerance")) cfg.check.tolerance = as_number(c["tolerance"], "check.tolerance");
    if (cfg.check.samples == 0) throw ParseError("check.samples", "must be positive");
    if (cfg.check.scale && !(*cfg.check.scale > 0.0)) throw ParseError("check.scale", "must be positive");
  }
  return cfg;
}

std::string serialize_problem(const FeasibilityProblem& problem) {
  json doc;
  doc["dimension"] = problem.dim();
  json sets = json::array();
  for (const ConvexSet& s : problem.sets()) sets.push_back(set_json(s));
  doc["sets"] = sets;
  if (problem.interior_point()) doc["interior_point"] = point_json(*problem.interior_point());
  return doc.dump(2);
}

} // namespace udr
