#include "udr/trace_io.hpp"

#include <charconv>
#include <ostream>

namespace udr {

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void write_trace(std::ostream& out, const IterationTrace& trace) {
  const std::size_t dim = trace.steps.empty() ? 0 : trace.steps.front().iterate.dim();
  out << "n,applied_operator_id,displacement,max_set_distance";
  for (std::size_t i = 1; i <= dim; ++i) out << ",x" << i;
  out << '\n';
  for (const TraceRecord& rec : trace.steps) {
    out << rec.n << ',' << rec.operator_id << ',' << format_double(rec.displacement) << ','
        << format_double(rec.max_set_distance);
    for (double v : rec.iterate.coords()) out << ',' << format_double(v);
    out << '\n';
  }
}

void write_reports(std::ostream& out, const std::vector<LabelledReport>& reports) {
  out << "property,operator,samples,worst_violation,tolerance,pass\n";
  for (const auto& [label, r] : reports) {
    out << r.property_name << ',' << label << ',' << r.samples << ',' << format_double(r.worst_violation) << ','
        << format_double(r.tolerance) << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

} // namespace udr
