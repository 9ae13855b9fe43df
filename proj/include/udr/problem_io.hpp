#pragma once

#include "udr/control.hpp"
#include "udr/diagnostics.hpp"
#include "udr/operator.hpp"
#include "udr/solver.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace udr {

/// Malformed or invalid problem document; what() starts with the location.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& location, const std::string& message);
  const std::string& location() const noexcept { return location_; }

private:
  std::string location_;
};

enum class Scheme { unrestricted_dr, composite_q, product };

std::string to_string(Scheme s);

struct CheckSettings {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::optional<double> scale;
  double tolerance = 1e-10;
};

/// A labelled operator resolved against a problem, e.g. "S2" or "P1".
struct NamedOperator {
  std::string label;
  OperatorExpr op;
};

/**
 * Everything a run needs beyond the sets themselves. Operator specs are
 * resolved against the problem at parse time, so an out-of-range set index or
 * a relaxation outside [0, 2] is reported before any iteration starts.
 */
struct RunConfig {
  Scheme scheme = Scheme::unrestricted_dr;
  ControlMap control = ControlMap::cyclic(1);
  std::size_t r = 2;
  Point x0 = Point::zeros(1);
  StopRule stop;
  std::vector<NamedOperator> operators;          // product scheme only
  std::optional<ControlMap> product_control;     // product scheme only
  std::optional<NamedOperator> certifier;
  std::optional<std::string> trace_path;
  CheckSettings check;
};

FeasibilityProblem parse_problem(std::string_view text);
RunConfig parse_run_config(std::string_view text, const FeasibilityProblem& problem);

/// Problem part of a document (dimension, sets, interior_point) with every
/// number written in shortest round-trip form.
std::string serialize_problem(const FeasibilityProblem& problem);

} // namespace udr
