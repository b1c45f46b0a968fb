#include "tnc/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "tnc/errors.hpp"
#include "tnc/inverse.hpp"
#include "tnc/version.hpp"

namespace tnc {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string header_comment(const ScenarioFile& file) {
  std::ostringstream os;
  os << "# transientnc " << kVersion << "\n";
  os << "# scenario " << file.hash_hex() << "\n";
  return os.str();
}

std::vector<double> sweep_points(const ScenarioFile& file) {
  if (file.sweep == SweepKind::single) {
    return {static_cast<double>(file.base.target_delay)};
  }
  return file.sweep_values;
}

const char* sweep_column(const ScenarioFile& file) {
  return file.sweep == SweepKind::single ? "w" : sweep_name(file.sweep);
}

// Evaluate one family at one sweep point; NaN on kernel/domain errors so a
// bad cell cannot take the whole sweep down.
double bound_cell(const ScenarioFile& file, BoundFamily family, double value,
                  std::vector<std::string>& warnings) {
  try {
    const Scenario sc = file.at_sweep_point(value);
    if (file.sweep == SweepKind::backlog_threshold) {
      return bound_backlog(sc, value).probability;
    }
    return bound(sc, family).probability;
  } catch (const Error& e) {
    warnings.push_back(std::string(family_name(family)) + " at " +
                       sweep_column(file) + "=" + fmt(value) + ": " + e.what());
    return std::nan("");
  }
}

SimEstimate simulate_sweep(const ScenarioFile& file) {
  const std::vector<double> points = sweep_points(file);
  switch (file.sweep) {
    case SweepKind::single:
    case SweepKind::delay: {
      std::vector<int> w_grid;
      for (double v : points) w_grid.push_back(static_cast<int>(v));
      TandemSimulator sim(file.base, file.sim);
      return sim.violation_by_delay(w_grid);
    }
    case SweepKind::backlog_threshold: {
      TandemSimulator sim(file.base, file.sim);
      return sim.violation_by_backlog(points);
    }
    case SweepKind::snr_db:
    case SweepKind::info_delay: {
      // One simulation per point; the violation is measured at the
      // scenario's own target delay.
      SimEstimate est;
      est.trials = file.sim.trials;
      const int w[] = {file.base.target_delay};
      for (double v : points) {
        TandemSimulator sim(file.at_sweep_point(v), file.sim);
        SimEstimate one = sim.violation_by_delay(w);
        SimPoint pt = one.points.at(0);
        pt.sweep_value = v;
        est.points.push_back(pt);
      }
      return est;
    }
  }
  throw ArgumentError("unknown sweep kind");
}

}  // namespace

std::vector<BoundFamily> applicable_families(const ScenarioFile& file) {
  std::vector<BoundFamily> fams;
  const bool delayed =
      file.base.info_delay > 0 || file.sweep == SweepKind::info_delay;
  if (delayed) {
    fams.push_back(BoundFamily::wtb_delayed);
    return fams;
  }
  if (file.base.arrivals.envelope()) fams.push_back(BoundFamily::stationary);
  fams.push_back(BoundFamily::sotat);
  fams.push_back(BoundFamily::wtb);
  return fams;
}

std::vector<BoundFamily> parse_family_list(const std::string& csv,
                                           const ScenarioFile& file) {
  if (csv.empty() || csv == "all") return applicable_families(file);
  std::vector<BoundFamily> fams;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) fams.push_back(family_from_name(tok));
  }
  if (fams.empty()) throw ArgumentError("empty family list");
  return fams;
}

ReportResult run_bound_report(const ScenarioFile& file,
                              const std::vector<BoundFamily>& families) {
  ReportResult res;
  std::ostringstream os;
  os << header_comment(file);
  const bool backlog = file.sweep == SweepKind::backlog_threshold;
  os << sweep_column(file);
  if (backlog) {
    os << ",backlog_bound";
  } else {
    for (BoundFamily f : families) os << "," << family_name(f);
  }
  os << "\n";
  for (double v : sweep_points(file)) {
    ++res.total_rows;
    os << fmt(v);
    int errors = 0;
    const int cells = backlog ? 1 : static_cast<int>(families.size());
    if (backlog) {
      const double p = bound_cell(file, BoundFamily::wtb, v, res.warnings);
      if (std::isnan(p)) ++errors;
      os << "," << fmt(p);
    } else {
      for (BoundFamily f : families) {
        const double p = bound_cell(file, f, v, res.warnings);
        if (std::isnan(p)) ++errors;
        os << "," << fmt(p);
      }
    }
    if (errors == cells) ++res.failed_rows;
    os << "\n";
  }
  res.csv = os.str();
  return res;
}

ReportResult run_sim_report(const ScenarioFile& file) {
  ReportResult res;
  const SimEstimate est = simulate_sweep(file);
  std::ostringstream os;
  os << header_comment(file);
  os << sweep_column(file) << ",p_hat,ci_lo,ci_hi,trials\n";
  for (const SimPoint& pt : est.points) {
    ++res.total_rows;
    os << fmt(pt.sweep_value) << "," << fmt(pt.p_hat) << "," << fmt(pt.ci_lo)
       << "," << fmt(pt.ci_hi) << "," << pt.trials << "\n";
  }
  res.csv = os.str();
  return res;
}

ReportResult run_compare_report(const ScenarioFile& file,
                                const std::vector<BoundFamily>& families) {
  ReportResult res;
  const std::vector<double> points = sweep_points(file);
  const SimEstimate est = simulate_sweep(file);
  const bool backlog = file.sweep == SweepKind::backlog_threshold;

  std::ostringstream os;
  os << header_comment(file);
  os << sweep_column(file);
  if (backlog) {
    os << ",backlog_bound";
  } else {
    for (BoundFamily f : families) os << "," << family_name(f);
  }
  os << ",sim_p_hat,sim_ci_lo,sim_ci_hi,trials,verdict\n";

  for (std::size_t i = 0; i < points.size(); ++i) {
    ++res.total_rows;
    const double v = points[i];
    const SimPoint& pt = est.points.at(i);
    os << fmt(v);
    std::vector<double> cells;
    if (backlog) {
      cells.push_back(bound_cell(file, BoundFamily::wtb, v, res.warnings));
    } else {
      for (BoundFamily f : families) {
        cells.push_back(bound_cell(file, f, v, res.warnings));
      }
    }
    int errors = 0;
    for (double c : cells) {
      os << "," << fmt(c);
      if (std::isnan(c)) ++errors;
    }
    if (errors == static_cast<int>(cells.size())) ++res.failed_rows;

    const double n = static_cast<double>(pt.trials);
    const double se = std::sqrt(pt.p_hat * (1.0 - pt.p_hat) / n);
    const char* verdict = "pass";
    if (pt.p_hat < 10.0 / n) {
      verdict = "inconclusive";  // too few hits to judge validity
    } else {
      for (double c : cells) {
        if (!std::isnan(c) && c < pt.p_hat - 3.0 * se) {
          verdict = "fail";
          res.all_valid = false;
          break;
        }
      }
    }
    os << "," << fmt(pt.p_hat) << "," << fmt(pt.ci_lo) << "," << fmt(pt.ci_hi)
       << "," << pt.trials << "," << verdict << "\n";
  }
  res.csv = os.str();
  return res;
}

ReportResult run_inverse_report(const ScenarioFile& file,
                                const std::string& mode, double eps,
                                const std::vector<BoundFamily>& families) {
  ReportResult res;
  std::ostringstream os;
  os << header_comment(file);
  if (mode == "delay") {
    os << "eps";
    for (BoundFamily f : families) os << "," << family_name(f) << "_w";
    os << "\n" << fmt(eps);
    for (BoundFamily f : families) {
      os << "," << delay_for_epsilon(file.base, f, eps);
    }
    os << "\n";
    res.total_rows = 1;
  } else if (mode == "snr") {
    if (file.sweep != SweepKind::delay && file.sweep != SweepKind::single) {
      throw ArgumentError("inverse snr mode sweeps eval.w_grid");
    }
    os << "w";
    for (BoundFamily f : families) os << "," << family_name(f) << "_snr_db";
    os << "\n";
    for (double v : sweep_points(file)) {
      ++res.total_rows;
      os << fmt(v);
      for (BoundFamily f : families) {
        const double snr =
            snr_for_epsilon(file.base, f, eps, static_cast<int>(v));
        os << "," << fmt(10.0 * std::log10(snr));
      }
      os << "\n";
    }
  } else {
    throw ArgumentError("inverse mode must be 'delay' or 'snr'");
  }
  res.csv = os.str();
  return res;
}

}  // namespace tnc
