#ifndef TNC_REPORT_HPP
#define TNC_REPORT_HPP

#include <string>
#include <vector>

#include "tnc/scenario_config.hpp"

namespace tnc {

// Families applicable to a scenario file: stationary when an envelope is
// declared, sotat/wtb when backlog information is current, wtb_delayed when
// it is not (or when the sweep varies d).
std::vector<BoundFamily> applicable_families(const ScenarioFile& file);

std::vector<BoundFamily> parse_family_list(const std::string& csv,
                                           const ScenarioFile& file);

struct ReportResult {
  std::string csv;
  int failed_rows = 0;   // rows where every requested value errored
  int total_rows = 0;
  bool all_valid = true; // compare only: no "fail" verdicts
  std::vector<std::string> warnings;
};

// Bound sweep: one row per sweep point, one probability column per family
// (backlog sweeps emit a single backlog-bound column instead).
ReportResult run_bound_report(const ScenarioFile& file,
                              const std::vector<BoundFamily>& families);

// Simulation sweep: w or x grids reuse trials across the grid; SNR and d
// grids run one simulation per point.
ReportResult run_sim_report(const ScenarioFile& file);

// Joined bound + simulation sweep with a per-row validity verdict
// (pass / fail / inconclusive when p_hat < 10/trials).
ReportResult run_compare_report(const ScenarioFile& file,
                                const std::vector<BoundFamily>& families);

// Inverse solvers. mode "delay": single row of smallest w per family.
// mode "snr": one row per w in eval.w_grid with the required SNR (dB) per
// family.
ReportResult run_inverse_report(const ScenarioFile& file,
                                const std::string& mode, double eps,
                                const std::vector<BoundFamily>& families);

}  // namespace tnc

#endif  // TNC_REPORT_HPP
