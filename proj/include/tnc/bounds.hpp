#ifndef TNC_BOUNDS_HPP
#define TNC_BOUNDS_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tnc/arrivals.hpp"
#include "tnc/channel.hpp"
#include "tnc/optimize.hpp"

namespace tnc {

enum class BoundFamily { stationary, sotat, wtb, wtb_delayed };

const char* family_name(BoundFamily f);
BoundFamily family_from_name(const std::string& name);

// One evaluation setting: N homogeneous hops, per-hop initial backlog, the
// message arrival process, and the timing triple (t, w, d). When info_delay
// d > 0 the backlog vector is the delayed measurement x(t0 - d) and
// `overhead` covers the d slots of stationary traffic before the message.
struct Scenario {
  int hops = 1;
  std::shared_ptr<const ChannelModel> channel;
  std::vector<double> backlog_bits;
  ArrivalProcess arrivals;
  ArrivalProcess overhead;  // horizon must equal info_delay
  int eval_time = 1;        // t
  int target_delay = 0;     // w
  int info_delay = 0;       // d

  int tau() const { return eval_time + target_delay; }
  double x_max() const;
  double backlog_total() const;
  CompositeArrival composite() const;

  // Throws ArgumentError when fields are inconsistent.
  void validate() const;

  Scenario with_delay(int w) const;
  Scenario with_backlog(std::vector<double> x) const;
};

struct BoundResult {
  double probability = 1.0;  // min(1, exp(raw_log_value))
  double s_opt = 0.0;
  double raw_log_value = 0.0;
  std::uint64_t evaluations = 0;
  bool at_boundary = false;  // optimum pinned at the s search boundary
  bool feasible = true;      // stationary only: false when no s has V0(s) < 1
};

// ---- Kernels: natural log of the bound expression at a given s ----
// All sums are computed term-by-term in the log domain and combined by
// log-sum-exp; binomials go through lgamma. This keeps tau in the hundreds
// finite where the linear-domain products overflow immediately.

// Phi(s) of the N-hop transient bound; requires s > 0 and info_delay == 0.
double kernel_wtb(const Scenario& sc, double s);

// Single-hop transient bound expression; requires hops == 1.
double kernel_wtb_single(const Scenario& sc, double s);

// Closed form of Phi(s) under the declared (sigma, rho) envelope. Upper
// bounds kernel_wtb pointwise in s for any arrivals satisfying the envelope.
double kernel_wtb_sigma_rho(const Scenario& sc, double s);

// Transient kernel assembled from the stationary machinery; requires
// s in (0, 1) and info_delay == 0.
double kernel_sotat(const Scenario& sc, double s);

// Single-hop closed form of the sotat kernel under the envelope.
double kernel_sotat_sigma_rho(const Scenario& sc, double s);

// Stationary end-to-end bound expression with cross traffic dimensioned as
// sigma_c = x_max, rho_c = 0; +inf where V0(s) >= 1.
double kernel_stationary(const Scenario& sc, double s);

// Phi_d(s): the delayed-backlog variant using the composite arrivals and the
// time axis re-indexed to the system start -d. Reduces exactly to kernel_wtb
// when d = 0 and the overhead is empty.
double kernel_wtb_delayed(const Scenario& sc, double s);

// ---- Minimized bounds ----

// Minimize the selected family's kernel over its admissible s range and clip
// the result to a probability.
BoundResult bound(const Scenario& sc, BoundFamily family,
                  const OptimizerConfig& cfg = {});

// Backlog violation bound P{B(t) > threshold}: min over s of
// exp(-s * threshold * ln2) * Phi(s) with tau = t (the target delay plays no
// role for backlog). Uses Phi_d when the scenario carries delayed backlog.
BoundResult bound_backlog(const Scenario& sc, double threshold_bits,
                          const OptimizerConfig& cfg = {});

}  // namespace tnc

#endif  // TNC_BOUNDS_HPP
