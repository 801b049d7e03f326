#include "mudens/trace_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace mudens {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

void write_sum_trace_csv(std::ostream& out, const SumTrace& trace) {
  out << "X,value,error_bound\n";
  for (const auto& c : trace.checkpoints) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%" PRIu64 ",%.17g,%.3e\n", c.x, c.value,
                  c.error_bound);
    out << buf;
  }
}

std::string render_sum_table(const SumTrace& trace) {
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%12s | %12s\n", "X", "S(X)");
  out << buf;
  out << "-------------+-------------\n";
  for (const auto& c : trace.checkpoints) {
    std::snprintf(buf, sizeof buf, "%12" PRIu64 " | %12.5f\n", c.x, c.value);
    out << buf;
  }
  if (trace.density) {
    std::snprintf(buf, sizeof buf, "%12s | %12.5f\n", "inf", *trace.density);
    out << buf;
  }
  return out.str();
}

void write_diagnostics_csv(std::ostream& out, const DensityDiagnostics& diag) {
  out << "X,pi_S,pi,delta_li,e_S,v_S\n";
  for (const auto& r : diag.rows) {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%.17g,%.17g,%.17g\n",
                  r.x, r.pi_s, r.pi_all, r.delta_li, r.e_s, r.v_s);
    out << buf;
  }
}

std::string render_diagnostics_table(const DensityDiagnostics& diag) {
  std::ostringstream out;
  out << "set " << diag.set_label << " over " << diag.field_label
      << ", density " << fmt("%.6f", diag.density) << "\n";
  char buf[192];
  std::snprintf(buf, sizeof buf, "%12s %12s %12s %14s %12s %12s\n", "X", "pi_S(X)",
                "pi(X)", "delta*Li(X)", "e_S(X)", "v_S(X)");
  out << buf;
  for (const auto& r : diag.rows) {
    std::snprintf(buf, sizeof buf, "%12" PRIu64 " %12" PRIu64 " %12" PRIu64 " %14.2f %12.2f %12.3e\n",
                  r.x, r.pi_s, r.pi_all, r.delta_li, r.e_s, r.v_s);
    out << buf;
  }
  return out.str();
}

}  // namespace mudens
