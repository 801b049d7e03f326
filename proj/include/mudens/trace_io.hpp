#pragma once

#include <iosfwd>
#include <string>

#include "mudens/partial_sums.hpp"

namespace mudens {

// Stable CSV: header "X,value,error_bound", one row per checkpoint, value
// with 17 significant digits. Byte-identical across runs for a fixed
// config and seed.
void write_sum_trace_csv(std::ostream& out, const SumTrace& trace);

// Two-column table mirroring the published layout, with the theoretical
// density as a final "inf" row when it is known.
std::string render_sum_table(const SumTrace& trace);

void write_diagnostics_csv(std::ostream& out, const DensityDiagnostics& diag);
std::string render_diagnostics_table(const DensityDiagnostics& diag);

}  // namespace mudens
