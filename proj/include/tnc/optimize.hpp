#ifndef TNC_OPTIMIZE_HPP
#define TNC_OPTIMIZE_HPP

#include <cstdint>
#include <functional>

namespace tnc {

struct OptimizerConfig {
  double s_lo = 1e-6;
  double s_hi = 0.0;     // 0 -> family/channel default
  double rel_tol = 1e-8; // relative tolerance on s
  int coarse_grid = 64;  // log-spaced bracket-scan points
  double hard_cap = 1e4; // geometric expansion stops here
};

struct MinimizeResult {
  double s_opt = 0.0;
  double log_min = 0.0;
  std::uint64_t evaluations = 0;
  bool at_lower = false;
  bool at_upper = false;
  bool expanded = false;  // s_hi was grown during the search
};

// Minimize a convex positive function given by its natural log over
// s in [s_lo, s_hi]: coarse log-grid scan to bracket, then golden-section
// refinement. Points where log_f is non-finite are treated as infeasible; if
// the scan is still decreasing at s_hi the interval is expanded geometrically
// up to hard_cap and the result flagged. Throws NumericError when no finite
// value exists anywhere.
MinimizeResult minimize_convex(const std::function<double(double)>& log_f,
                               const OptimizerConfig& cfg);

}  // namespace tnc

#endif  // TNC_OPTIMIZE_HPP
