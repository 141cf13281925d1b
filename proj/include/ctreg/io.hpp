#pragma once

// Text serialization: observation paths, benchmark reports, validation
// reports, estimate curves.  All writers emit deterministic byte streams for
// fixed inputs (fixed field order, fixed float formatting).

#include <string>

#include "ctreg/montecarlo.hpp"
#include "ctreg/observation.hpp"

namespace ctreg {

// "t,y" with cumulative levels y_0 = 0, full double precision
std::string path_csv(const ObservationRecord& obs);

// inverse of path_csv: infers the grid (t step and horizon), checks row
// count and resolution, differences levels back to increments
ObservationRecord parse_path_csv(const std::string& text);

// long form: "n,estimator,risk,stderr", four estimator rows per n
std::string report_csv(const RiskReport& report);

// wide form: one row per n with risks, ratios and the mean noise level
std::string report_table_csv(const RiskReport& report);

// aligned human-readable table
std::string report_table_text(const RiskReport& report);

// "t,truth,improved,lse" first-replication curves
std::string plot_csv(const RiskRow& row);

// one "[pass]/[FAIL]" line per check plus a summary line
std::string validation_text(const ValidationReport& report);
std::string validation_json(const ValidationReport& report);

// "t,improved,lse" fitted curves for one observation path
std::string estimate_csv(const EstimateResult& res);
std::string estimate_diagnostics_json(const EstimateResult& res);

// write via sibling temp file + rename; throws IoError
void write_text_file_atomic(const std::string& path,
                            const std::string& content);

}  // namespace ctreg
