#ifndef TNC_SIM_HPP
#define TNC_SIM_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "tnc/bounds.hpp"
#include "tnc/rng.hpp"

namespace tnc {

struct SimConfig {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  int max_horizon = 0;  // slots past t_eval; 0 -> 64 * (w_max + T) + d
  int t_eval = -1;      // slot where W/B is measured; -1 -> message end T
  int threads = 0;      // 0 -> hardware concurrency
};

struct SimPoint {
  double sweep_value = 0.0;  // w (slots) or backlog threshold (bits)
  double p_hat = 0.0;
  double ci_lo = 0.0;  // Wilson 95% interval
  double ci_hi = 0.0;
  std::uint64_t trials = 0;
};

struct SimEstimate {
  std::vector<SimPoint> points;
  std::uint64_t trials = 0;
};

// Wilson score interval for a binomial proportion (95%).
void wilson_interval(std::uint64_t successes, std::uint64_t trials,
                     double& lo, double& hi);

// One trial's observables. Departure and queue histories are in the message
// frame: index k covers slots [-d, -d+1, ...] so entry (k) is the cumulative
// path departure D by the start of slot k - d + 1... see departures_cum.
struct TrialRecord {
  // departures_cum[k] = bits departed the path during simulated slots
  // 0..k-1 (slot 0 is the system start, i.e. message slot -d).
  std::vector<double> departures_cum;
  // Total offered load A'(t_end) + sum x_n and where the trial froze.
  double target_bits = 0.0;
  // First simulated-slot index k with departures_cum[k] >= target, or -1 if
  // the horizon was exhausted.
  int first_done_slot = -1;
  // True iff some through-traffic bit left a node while that node still held
  // its own initial backlog (must never happen under FCFS).
  bool fcfs_violation = false;
  // Max over slots of (departed - offered); positive values break
  // conservation.
  double conservation_slack = 0.0;
};

// Slot-based Monte Carlo of the N-hop FCFS fluid tandem: initial backlog x_n
// queued ahead at node n, store-and-forward forwarding (bits sent by node n
// in slot i join node n+1 at slot i+1), every node serving each slot.
class TandemSimulator {
public:
  TandemSimulator(Scenario scenario, SimConfig cfg);

  // Empirical P(W(t_eval) > w) per grid entry. Deterministic in
  // (seed, trials, scenario) regardless of thread count.
  SimEstimate violation_by_delay(std::span<const int> w_grid) const;

  // Empirical P(B(t_eval) > x) per threshold.
  SimEstimate violation_by_backlog(std::span<const double> x_grid) const;

  // Runs a single trial with the given stream (exposed for invariant tests).
  TrialRecord run_trial(RngStream& rng) const;

  // Virtual delay W(t) extracted from a record: smallest w >= 0 with
  // A'(t) + sum x_n <= D(t + w), or -1 ("exceeds horizon", counted as a
  // violation of every finite w).
  int virtual_delay(const TrialRecord& rec, int t) const;

  // Backlog B(t) = A'(t) + sum x_n - D(t) from a record.
  double backlog_at(const TrialRecord& rec, int t) const;

  int t_eval() const { return t_eval_; }
  int horizon() const { return horizon_; }
  const Scenario& scenario() const { return scenario_; }

private:
  // Offered load (arrivals + initial backlog) up to message-frame slot t.
  double offered_until(int t) const;

  Scenario scenario_;
  SimConfig cfg_;
  int t_eval_ = 0;
  int horizon_ = 0;           // simulated slots (from the system start -d)
  std::vector<double> slot_arrivals_;  // node-1 arrivals per simulated slot
};

}  // namespace tnc

#endif  // TNC_SIM_HPP
