#ifndef TNC_INVERSE_HPP
#define TNC_INVERSE_HPP

#include "tnc/bounds.hpp"

namespace tnc {

// Smallest integer w >= 0 whose minimized bound is <= eps, by exponential
// then binary search (the bound is non-increasing in w). Throws
// UnreachableError when not reached by w_cap.
int delay_for_epsilon(const Scenario& sc, BoundFamily family, double eps,
                      int w_cap = 10000, const OptimizerConfig& cfg = {});

// Minimal homogeneous per-link average SNR (linear) whose bound at the given
// target delay is <= eps, by bisection on dB to a 0.01 dB resolution. The
// scenario's channel must be Rayleigh (it supplies symbols-per-slot). Throws
// UnreachableError when eps is not reachable at snr_db_hi.
double snr_for_epsilon(const Scenario& sc, BoundFamily family, double eps,
                       int target_delay, double snr_db_lo = -20.0,
                       double snr_db_hi = 60.0,
                       const OptimizerConfig& cfg = {});

}  // namespace tnc

#endif  // TNC_INVERSE_HPP
