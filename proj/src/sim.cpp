#include "tnc/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "tnc/errors.hpp"

namespace tnc {

namespace {

constexpr double kFluidEps = 1e-9;

struct Segment {
  bool through;
  double bits;
};

// FIFO of fluid segments with an advancing head, reused across trials.
struct NodeQueue {
  std::vector<Segment> segs;
  std::size_t head = 0;
  double total = 0.0;

  void reset(double initial_cross_bits) {
    segs.clear();
    head = 0;
    total = 0.0;
    if (initial_cross_bits > 0.0) push(false, initial_cross_bits);
  }

  void push(bool through, double bits) {
    if (bits <= 0.0) return;
    if (segs.size() > head && segs.back().through == through) {
      segs.back().bits += bits;
    } else {
      segs.push_back({through, bits});
    }
    total += bits;
    // Compact once the dead prefix dominates.
    if (head > 64 && head * 2 > segs.size()) {
      segs.erase(segs.begin(), segs.begin() + static_cast<long>(head));
      head = 0;
    }
  }

  // Serves up to `amount` bits from the front; returns bits served and splits
  // them by class. `through_served` is the through-traffic part.
  double serve(double amount, double& through_served) {
    double served = 0.0;
    through_served = 0.0;
    while (amount > kFluidEps && head < segs.size()) {
      Segment& front = segs[head];
      const double take = std::min(front.bits, amount);
      front.bits -= take;
      amount -= take;
      served += take;
      if (front.through) through_served += take;
      if (front.bits <= kFluidEps) {
        served += front.bits;
        if (front.through) through_served += front.bits;
        front.bits = 0.0;
        ++head;
      }
    }
    total = std::max(0.0, total - served);
    return served;
  }
};

}  // namespace

void wilson_interval(std::uint64_t successes, std::uint64_t trials,
                     double& lo, double& hi) {
  if (trials == 0) {
    lo = 0.0;
    hi = 1.0;
    return;
  }
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2n = z * z / n;
  const double denom = 1.0 + z2n;
  const double center = (p + z2n / 2.0) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n)) / denom;
  lo = std::max(0.0, center - half);
  hi = std::min(1.0, center + half);
}

TandemSimulator::TandemSimulator(Scenario scenario, SimConfig cfg)
    : scenario_(std::move(scenario)), cfg_(cfg) {
  scenario_.validate();
  if (cfg_.trials < 1) throw ArgumentError("simulation needs trials >= 1");
  const int T = scenario_.arrivals.horizon();
  t_eval_ = cfg_.t_eval >= 0 ? cfg_.t_eval : T;
  const int d = scenario_.info_delay;
  horizon_ = cfg_.max_horizon > 0
                 ? cfg_.max_horizon
                 : 64 * (scenario_.target_delay + std::max(T, 1)) + d;
  if (horizon_ < t_eval_ + d + 1) {
    throw ArgumentError("max_horizon must cover the evaluation slot");
  }
  // Node-1 arrivals per simulated slot: overhead on [0, d), message after.
  slot_arrivals_.assign(static_cast<std::size_t>(horizon_), 0.0);
  for (int k = 0; k < d; ++k) {
    slot_arrivals_[k] = scenario_.overhead.increments()[k];
  }
  for (int i = 0; i < T && d + i < horizon_; ++i) {
    slot_arrivals_[d + i] = scenario_.arrivals.increments()[i];
  }
}

double TandemSimulator::offered_until(int t) const {
  const int d = scenario_.info_delay;
  double arr = 0.0;
  if (d > 0) {
    arr = scenario_.composite().cumulative(-d, t);
  } else {
    arr = scenario_.arrivals.cumulative(0, std::max(t, 0));
  }
  return arr + scenario_.backlog_total();
}

TrialRecord TandemSimulator::run_trial(RngStream& rng) const {
  const int N = scenario_.hops;
  const int d = scenario_.info_delay;
  const ChannelModel& ch = *scenario_.channel;

  TrialRecord rec;
  rec.target_bits = offered_until(t_eval_);
  rec.departures_cum.reserve(64);
  rec.departures_cum.push_back(0.0);

  std::vector<NodeQueue> nodes(static_cast<std::size_t>(N));
  std::vector<double> own_initial_left(static_cast<std::size_t>(N));
  std::vector<double> forward(static_cast<std::size_t>(N));
  std::vector<double> forward_through(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) {
    nodes[n].reset(scenario_.backlog_bits[n]);
    own_initial_left[n] = scenario_.backlog_bits[n];
  }

  double departed = 0.0;
  double arrived = 0.0;
  const double total_backlog = scenario_.backlog_total();

  for (int slot = 0; slot < horizon_; ++slot) {
    const double a = slot_arrivals_[static_cast<std::size_t>(slot)];
    if (a > 0.0) {
      nodes[0].push(true, a);
      arrived += a;
    }
    // Every node serves simultaneously from its start-of-slot queue; what it
    // sends becomes available downstream only next slot (store-and-forward).
    for (int n = 0; n < N; ++n) {
      const double cap = ch.sample_capacity(rng);
      double through_served = 0.0;
      const double served = nodes[n].serve(cap, through_served);
      if (through_served > kFluidEps && own_initial_left[n] > kFluidEps) {
        rec.fcfs_violation = true;
      }
      own_initial_left[n] =
          std::max(0.0, own_initial_left[n] - (served - through_served));
      forward[n] = served;
      forward_through[n] = through_served;
    }
    for (int n = 1; n < N; ++n) {
      const double cross = forward[n - 1] - forward_through[n - 1];
      if (cross > 0.0) nodes[n].push(false, cross);
      if (forward_through[n - 1] > 0.0) {
        nodes[n].push(true, forward_through[n - 1]);
      }
    }
    departed += forward[N - 1];
    rec.departures_cum.push_back(departed);
    rec.conservation_slack = std::max(
        rec.conservation_slack, departed - (arrived + total_backlog));

    const int k = slot + 1;  // simulated slots completed
    if (rec.first_done_slot < 0 && departed >= rec.target_bits - kFluidEps) {
      rec.first_done_slot = k;
    }
    if (rec.first_done_slot >= 0 && k >= t_eval_ + d) break;
  }
  return rec;
}

int TandemSimulator::virtual_delay(const TrialRecord& rec, int t) const {
  const int d = scenario_.info_delay;
  const double target = offered_until(t);
  for (std::size_t k = 0; k < rec.departures_cum.size(); ++k) {
    if (rec.departures_cum[k] >= target - kFluidEps) {
      return std::max(0, static_cast<int>(k) - d - t);
    }
  }
  return -1;  // exceeds horizon
}

double TandemSimulator::backlog_at(const TrialRecord& rec, int t) const {
  const int d = scenario_.info_delay;
  const std::size_t k = static_cast<std::size_t>(t + d);
  if (k >= rec.departures_cum.size()) {
    throw ArgumentError("trial record does not cover the requested slot");
  }
  return offered_until(t) - rec.departures_cum[k];
}

namespace {

// Deterministic parallel accumulation: trials are split into fixed blocks,
// each trial's RNG stream depends only on (seed, trial index), and the
// per-point tallies are integers, so any worker interleaving produces the
// same counts.
template <typename PerTrial>
std::vector<std::uint64_t> accumulate_counts(std::uint64_t trials,
                                             std::uint64_t seed, int threads,
                                             std::size_t n_points,
                                             const PerTrial& per_trial) {
  const std::uint64_t kBlock = 8192;
  const std::uint64_t n_blocks = (trials + kBlock - 1) / kBlock;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const unsigned n_workers = threads > 0
                                 ? static_cast<unsigned>(threads)
                                 : std::min<unsigned>(hw, 16);

  std::vector<std::uint64_t> counts(n_points, 0);
  std::mutex merge_mutex;
  std::atomic<std::uint64_t> next_block{0};
  auto worker = [&] {
    std::vector<std::uint64_t> local(n_points, 0);
    for (;;) {
      const std::uint64_t b = next_block.fetch_add(1);
      if (b >= n_blocks) break;
      const std::uint64_t lo = b * kBlock;
      const std::uint64_t hi = std::min(trials, lo + kBlock);
      for (std::uint64_t trial = lo; trial < hi; ++trial) {
        RngStream rng = RngStream::for_trial(seed, trial);
        per_trial(rng, local);
      }
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    for (std::size_t i = 0; i < n_points; ++i) counts[i] += local[i];
  };

  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return counts;
}

SimEstimate to_estimate(std::span<const double> sweep_values,
                        const std::vector<std::uint64_t>& counts,
                        std::uint64_t trials) {
  SimEstimate est;
  est.trials = trials;
  est.points.reserve(sweep_values.size());
  for (std::size_t i = 0; i < sweep_values.size(); ++i) {
    SimPoint pt;
    pt.sweep_value = sweep_values[i];
    pt.trials = trials;
    pt.p_hat = static_cast<double>(counts[i]) / static_cast<double>(trials);
    wilson_interval(counts[i], trials, pt.ci_lo, pt.ci_hi);
    est.points.push_back(pt);
  }
  return est;
}

}  // namespace

SimEstimate TandemSimulator::violation_by_delay(
    std::span<const int> w_grid) const {
  if (w_grid.empty()) throw ArgumentError("empty w grid");
  const int w_max = *std::max_element(w_grid.begin(), w_grid.end());
  if (horizon_ < t_eval_ + scenario_.info_delay + w_max + 1) {
    throw ArgumentError("max_horizon too small for the largest w");
  }
  auto counts = accumulate_counts(
      cfg_.trials, cfg_.seed, cfg_.threads, w_grid.size(),
      [&](RngStream& rng, std::vector<std::uint64_t>& local) {
        const TrialRecord rec = run_trial(rng);
        const int W = virtual_delay(rec, t_eval_);
        for (std::size_t j = 0; j < w_grid.size(); ++j) {
          if (W < 0 || W > w_grid[j]) ++local[j];
        }
      });
  std::vector<double> sweep(w_grid.size());
  for (std::size_t j = 0; j < w_grid.size(); ++j) sweep[j] = w_grid[j];
  return to_estimate(sweep, counts, cfg_.trials);
}

SimEstimate TandemSimulator::violation_by_backlog(
    std::span<const double> x_grid) const {
  if (x_grid.empty()) throw ArgumentError("empty backlog threshold grid");
  auto counts = accumulate_counts(
      cfg_.trials, cfg_.seed, cfg_.threads, x_grid.size(),
      [&](RngStream& rng, std::vector<std::uint64_t>& local) {
        const TrialRecord rec = run_trial(rng);
        const double B = backlog_at(rec, t_eval_);
        for (std::size_t j = 0; j < x_grid.size(); ++j) {
          if (B > x_grid[j]) ++local[j];
        }
      });
  return to_estimate(x_grid, counts, cfg_.trials);
}

}  // namespace tnc
