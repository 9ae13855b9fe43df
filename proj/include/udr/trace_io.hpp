#pragma once

#include "udr/diagnostics.hpp"
#include "udr/solver.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace udr {

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// Header `n,applied_operator_id,displacement,max_set_distance,x1,...,xd`,
/// then one row per record in n order.
void write_trace(std::ostream& out, const IterationTrace& trace);

struct LabelledReport {
  std::string operator_label;
  PropertyReport report;
};

/// Header `property,operator,samples,worst_violation,tolerance,pass`.
void write_reports(std::ostream& out, const std::vector<LabelledReport>& reports);

} // namespace udr
