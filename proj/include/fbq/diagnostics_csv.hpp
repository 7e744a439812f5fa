#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fbq/analysis.hpp"
#include "fbq/diagnostics.hpp"
#include "fbq/experiments.hpp"

namespace fbq {

/// Column order of diagnostics CSV files.
extern const char* const kDiagnosticsCsvHeader;

/// Writes header plus one row per sample with 17 significant digits, so a
/// read-back reproduces every double exactly. Rows must carry the L^4 and
/// L^8 norms.
void write_diagnostics_csv(const std::vector<DiagnosticsRow>& rows, const std::string& path);

/// Parses a diagnostics CSV produced by write_diagnostics_csv.
std::vector<DiagnosticsRow> read_diagnostics_csv(const std::string& path);

/// Check-report CSV: `# key = value` header lines echoing the effective
/// config, then name,worst_residual,worst_t,tolerance,pass rows.
void write_check_reports_csv(const ScenarioReport& report, const std::string& path);

/// Console rendering of a scenario report (config header unless quiet, one
/// line per check, notes, PASS/FAIL summary).
void print_report(std::ostream& os, const ScenarioReport& report, bool quiet);

} // namespace fbq
