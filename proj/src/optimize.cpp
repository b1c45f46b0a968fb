#include "tnc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "tnc/bounds.hpp"
#include "tnc/errors.hpp"
#include "tnc/inverse.hpp"

namespace tnc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_eval(const std::function<double(double)>& f, double s,
                 std::uint64_t& evals) {
  ++evals;
  const double v = f(s);
  return std::isnan(v) ? kInf : v;
}

}  // namespace

MinimizeResult minimize_convex(const std::function<double(double)>& log_f,
                               const OptimizerConfig& cfg) {
  if (!(cfg.s_lo > 0.0) || !(cfg.s_hi > cfg.s_lo)) {
    throw ArgumentError("optimizer needs 0 < s_lo < s_hi");
  }
  if (!(cfg.rel_tol > 0.0)) throw ArgumentError("rel_tol must be > 0");
  const int n = std::max(cfg.coarse_grid, 4);

  MinimizeResult res;
  std::vector<double> ss, vals;
  ss.reserve(n);
  double lo = std::log(cfg.s_lo), hi = std::log(cfg.s_hi);
  for (int i = 0; i < n; ++i) {
    ss.push_back(std::exp(lo + (hi - lo) * i / (n - 1)));
  }
  for (double s : ss) vals.push_back(safe_eval(log_f, s, res.evaluations));

  auto argmin = [&] {
    std::size_t best = 0;
    for (std::size_t i = 1; i < ss.size(); ++i) {
      if (vals[i] < vals[best]) best = i;
    }
    return best;
  };

  // A scan still decreasing at s_hi means the bracket lies beyond it: grow
  // the interval geometrically until bracketed or the hard cap is reached.
  std::size_t best = argmin();
  while (std::isfinite(vals[best]) && best == ss.size() - 1 &&
         ss.back() < cfg.hard_cap * (1.0 - 1e-12)) {
    res.expanded = true;
    const double new_hi = std::min(ss.back() * 8.0, cfg.hard_cap);
    const double llo = std::log(ss.back()), lhi = std::log(new_hi);
    for (int i = 1; i <= 16; ++i) {
      const double s = std::exp(llo + (lhi - llo) * i / 16.0);
      ss.push_back(s);
      vals.push_back(safe_eval(log_f, s, res.evaluations));
    }
    best = argmin();
  }

  if (!std::isfinite(vals[best])) {
    throw InfeasibleError("kernel is not finite anywhere on the s grid");
  }

  res.at_lower = (best == 0);
  res.at_upper = (best == ss.size() - 1);

  // Golden-section refinement inside the bracket, in log-s coordinates so the
  // stopping rule is relative on s.
  double a = std::log(ss[best > 0 ? best - 1 : best]);
  double b = std::log(ss[std::min(best + 1, ss.size() - 1)]);
  double best_s = ss[best], best_v = vals[best];
  if (b > a) {
    constexpr double kGolden = 0.6180339887498949;
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = safe_eval(log_f, std::exp(c), res.evaluations);
    double fd = safe_eval(log_f, std::exp(d), res.evaluations);
    while (b - a > cfg.rel_tol) {
      if (fc <= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kGolden * (b - a);
        fc = safe_eval(log_f, std::exp(c), res.evaluations);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kGolden * (b - a);
        fd = safe_eval(log_f, std::exp(d), res.evaluations);
      }
    }
    const double sm = std::exp(0.5 * (a + b));
    const double vm = safe_eval(log_f, sm, res.evaluations);
    // Refinement never loses against the coarse scan.
    for (auto [s, v] : {std::pair{sm, vm}, {std::exp(c), fc}, {std::exp(d), fd}}) {
      if (v < best_v) {
        best_v = v;
        best_s = s;
      }
    }
  }
  res.s_opt = best_s;
  res.log_min = best_v;
  return res;
}

int delay_for_epsilon(const Scenario& sc, BoundFamily family, double eps,
                      int w_cap, const OptimizerConfig& cfg) {
  if (!(eps > 0.0) || eps > 1.0) throw ArgumentError("eps must be in (0, 1]");
  auto prob = [&](int w) { return bound(sc.with_delay(w), family, cfg).probability; };
  if (prob(0) <= eps) return 0;
  // Exponential growth, then binary search on the monotone tail.
  int lo = 0, hi = 1;
  while (prob(hi) > eps) {
    lo = hi;
    hi *= 2;
    if (hi > w_cap) {
      throw UnreachableError("deadline unbounded at cap w = " +
                             std::to_string(w_cap) + " for eps = " +
                             std::to_string(eps));
    }
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (prob(mid) <= eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double snr_for_epsilon(const Scenario& sc, BoundFamily family, double eps,
                       int target_delay, double snr_db_lo, double snr_db_hi,
                       const OptimizerConfig& cfg) {
  if (!(eps > 0.0) || eps > 1.0) throw ArgumentError("eps must be in (0, 1]");
  const auto* ray = dynamic_cast<const RayleighChannel*>(sc.channel.get());
  if (!ray) {
    throw ArgumentError("snr_for_epsilon requires a Rayleigh channel scenario");
  }
  const double m = ray->symbols_per_slot();
  auto prob = [&](double db) {
    Scenario cand = sc.with_delay(target_delay);
    cand.channel = std::make_shared<RayleighChannel>(
        RayleighChannel::from_db(db, m));
    return bound(cand, family, cfg).probability;
  };
  if (prob(snr_db_hi) > eps) {
    throw UnreachableError("eps = " + std::to_string(eps) +
                           " not reachable within the SNR cap " +
                           std::to_string(snr_db_hi) + " dB");
  }
  if (prob(snr_db_lo) <= eps) {
    return std::pow(10.0, snr_db_lo / 10.0);
  }
  double lo = snr_db_lo, hi = snr_db_hi;
  while (hi - lo > 0.01) {
    const double mid = 0.5 * (lo + hi);
    if (prob(mid) <= eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::pow(10.0, hi / 10.0);
}

}  // namespace tnc
