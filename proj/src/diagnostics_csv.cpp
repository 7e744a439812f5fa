#include "fbq/diagnostics_csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fbq/errors.hpp"

namespace fbq {

const char* const kDiagnosticsCsvHeader =
    "t,l2_theta,l2_u,l2_omega,lp4_theta,lp8_theta,hs1_theta,hs2_u,"
    "diss_beta,diss_alpha_u,diss_alpha_omega,f_inner_theta";

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_field(const std::string& s, const std::string& path) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw FormatError("diagnostics csv '" + path + "': bad number '" + s + "'");
    return v;
}

} // namespace

void write_diagnostics_csv(const std::vector<DiagnosticsRow>& rows, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw FormatError("write_diagnostics_csv: cannot open '" + path + "'");
    os << kDiagnosticsCsvHeader << '\n';
    for (const auto& r : rows) {
        if (!r.lp_theta.count(4.0) || !r.lp_theta.count(8.0))
            throw std::invalid_argument("write_diagnostics_csv: row lacks L^4/L^8 norms");
        os << g17(r.t) << ',' << g17(r.l2_theta) << ',' << g17(r.l2_u) << ','
           << g17(r.l2_omega) << ',' << g17(r.lp_theta.at(4.0)) << ','
           << g17(r.lp_theta.at(8.0)) << ',' << g17(r.hs1_theta) << ',' << g17(r.hs2_u) << ','
           << g17(r.diss_beta) << ',' << g17(r.diss_alpha_u) << ','
           << g17(r.diss_alpha_omega) << ',' << g17(r.f_inner_theta) << '\n';
    }
    if (!os) throw FormatError("write_diagnostics_csv: I/O failure writing '" + path + "'");
}

std::vector<DiagnosticsRow> read_diagnostics_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("read_diagnostics_csv: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(is, line) || line != kDiagnosticsCsvHeader)
        throw FormatError("read_diagnostics_csv '" + path + "': unexpected header");
    std::vector<DiagnosticsRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) cols.push_back(item);
        if (cols.size() != 12)
            throw FormatError("read_diagnostics_csv '" + path + "': expected 12 columns, got " +
                              std::to_string(cols.size()));
        DiagnosticsRow r;
        r.t = parse_field(cols[0], path);
        r.l2_theta = parse_field(cols[1], path);
        r.l2_u = parse_field(cols[2], path);
        r.l2_omega = parse_field(cols[3], path);
        r.lp_theta[4.0] = parse_field(cols[4], path);
        r.lp_theta[8.0] = parse_field(cols[5], path);
        r.hs1_theta = parse_field(cols[6], path);
        r.hs2_u = parse_field(cols[7], path);
        r.diss_beta = parse_field(cols[8], path);
        r.diss_alpha_u = parse_field(cols[9], path);
        r.diss_alpha_omega = parse_field(cols[10], path);
        r.f_inner_theta = parse_field(cols[11], path);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_check_reports_csv(const ScenarioReport& report, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw FormatError("write_check_reports_csv: cannot open '" + path + "'");
    os << "# scenario = " << report.name << '\n';
    for (const auto& [k, v] : report.header) os << "# " << k << " = " << v << '\n';
    os << "name,worst_residual,worst_t,tolerance,pass\n";
    for (const auto& c : report.checks)
        os << c.name << ',' << g17(c.worst_residual) << ',' << g17(c.worst_t) << ','
           << g17(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
    if (!os) throw FormatError("write_check_reports_csv: I/O failure writing '" + path + "'");
}

void print_report(std::ostream& os, const ScenarioReport& report, bool quiet) {
    os << "== scenario: " << report.name << " ==\n";
    if (!quiet) {
        for (const auto& [k, v] : report.header) os << "  " << k << " = " << v << '\n';
    }
    for (const auto& c : report.checks) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  worst_residual = "
           << g17(c.worst_residual) << "  worst_t = " << g17(c.worst_t)
           << "  tolerance = " << g17(c.tolerance) << '\n';
    }
    if (!quiet)
        for (const auto& n : report.notes) os << "  note: " << n << '\n';
    os << (report.pass() ? "OVERALL PASS" : "OVERALL FAIL") << " (" << report.checks.size()
       << " checks)\n";
}

} // namespace fbq
