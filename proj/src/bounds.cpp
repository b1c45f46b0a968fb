#include "tnc/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "tnc/errors.hpp"
#include "tnc/log_util.hpp"
#include "tnc/units.hpp"

namespace tnc {

const char* family_name(BoundFamily f) {
  switch (f) {
    case BoundFamily::stationary: return "stationary";
    case BoundFamily::sotat: return "sotat";
    case BoundFamily::wtb: return "wtb";
    case BoundFamily::wtb_delayed: return "wtb_delayed";
  }
  return "?";
}

BoundFamily family_from_name(const std::string& name) {
  if (name == "stationary") return BoundFamily::stationary;
  if (name == "sotat") return BoundFamily::sotat;
  if (name == "wtb") return BoundFamily::wtb;
  if (name == "wtb_delayed") return BoundFamily::wtb_delayed;
  throw ArgumentError("unknown bound family '" + name + "'");
}

double Scenario::x_max() const {
  double m = 0.0;
  for (double x : backlog_bits) m = std::max(m, x);
  return m;
}

double Scenario::backlog_total() const {
  double s = 0.0;
  for (double x : backlog_bits) s += x;
  return s;
}

CompositeArrival Scenario::composite() const {
  return CompositeArrival(overhead, arrivals, info_delay);
}

void Scenario::validate() const {
  if (hops < 1) throw ArgumentError("scenario requires at least one hop");
  if (!channel) throw ArgumentError("scenario has no channel model");
  if (static_cast<int>(backlog_bits.size()) != hops) {
    throw ArgumentError("backlog vector length must equal the hop count");
  }
  for (double x : backlog_bits) {
    if (x < 0.0) throw ArgumentError("initial backlog must be >= 0");
  }
  if (eval_time < 0) throw ArgumentError("eval time t must be >= 0");
  if (target_delay < 0) throw ArgumentError("target delay w must be >= 0");
  if (info_delay < 0) throw ArgumentError("information delay d must be >= 0");
  if (overhead.horizon() != info_delay) {
    throw ArgumentError(
        "overhead process must cover exactly the d slots before the message");
  }
}

Scenario Scenario::with_delay(int w) const {
  Scenario sc = *this;
  sc.target_delay = w;
  return sc;
}

Scenario Scenario::with_backlog(std::vector<double> x) const {
  Scenario sc = *this;
  sc.backlog_bits = std::move(x);
  return sc;
}

namespace {

void require_positive_s(double s) {
  if (!(s > 0.0)) throw ArgumentError("kernel requires s > 0");
}

void require_current_backlog(const Scenario& sc, const char* kernel) {
  if (sc.info_delay != 0) {
    throw ArgumentError(std::string(kernel) +
                        " requires current backlog information (d = 0)");
  }
}

const Envelope& require_envelope(const Scenario& sc, const char* kernel) {
  if (!sc.arrivals.envelope()) {
    throw ArgumentError(std::string(kernel) +
                        " requires arrivals with a (sigma,rho) envelope");
  }
  return *sc.arrivals.envelope();
}

// Suffix targets sum_{n=1}^{N-i} x_n for i = 0..N-1 come from one prefix pass.
std::vector<double> backlog_prefix(const Scenario& sc) {
  std::vector<double> pre(sc.backlog_bits.size() + 1, 0.0);
  for (std::size_t n = 0; n < sc.backlog_bits.size(); ++n) {
    pre[n + 1] = pre[n] + sc.backlog_bits[n];
  }
  return pre;
}

// ln Phi for the Eq.-14 shape, shared by the current- and delayed-backlog
// kernels. `shift` is the information delay d: time is re-indexed so the
// system starts at -d, which adds d to t and tau inside the sums, and the
// arrival ratios are taken from `log_cum`(u, t) = (A(t) - A(u)) * ln2 with u
// running down to 1 - d.
template <typename LogCum>
double phi_kernel(const Scenario& sc, double s, int shift, LogCum&& log_cum) {
  require_positive_s(s);
  const int t = sc.eval_time;
  const int tau_s = sc.tau() + shift;
  const int t_s = t + shift;
  const int N = sc.hops;
  const double lv = sc.channel->ln_v(s);
  const auto pre = backlog_prefix(sc);

  LogSumExp acc;
  const double lb_ratio = log_binomial(N + tau_s - 2, tau_s - 1);
  for (int us = 1; us <= t_s - 1; ++us) {
    acc.add(lb_ratio + s * log_cum(us - shift, t) + (tau_s - us) * lv);
  }
  const double log_At = log_cum(-shift, t);
  for (int i = 0; i < N; ++i) {
    acc.add(log_binomial(i + tau_s - 1, tau_s - 1) + s * log_At +
            s * bits_to_log(pre[N - i]) + tau_s * lv);
  }
  return acc.value();
}

}  // namespace

double kernel_wtb(const Scenario& sc, double s) {
  require_current_backlog(sc, "kernel_wtb");
  return phi_kernel(sc, s, 0, [&](int u, int t) {
    return sc.arrivals.log_ratio(u, t);
  });
}

double kernel_wtb_delayed(const Scenario& sc, double s) {
  const CompositeArrival comp = sc.composite();
  return phi_kernel(sc, s, sc.info_delay, [&](int u, int t) {
    return comp.log_ratio(u, t);
  });
}

double kernel_wtb_single(const Scenario& sc, double s) {
  if (sc.hops != 1) throw ArgumentError("kernel_wtb_single requires N = 1");
  require_current_backlog(sc, "kernel_wtb_single");
  require_positive_s(s);
  const int t = sc.eval_time;
  const int tau = sc.tau();
  const double lv = sc.channel->ln_v(s);
  LogSumExp acc;
  acc.add(s * sc.arrivals.log_ratio(0, t) +
          s * bits_to_log(sc.backlog_bits[0]) + tau * lv);
  for (int u = 1; u <= t - 1; ++u) {
    acc.add(s * sc.arrivals.log_ratio(u, t) + (tau - u) * lv);
  }
  return acc.value();
}

double kernel_wtb_sigma_rho(const Scenario& sc, double s) {
  require_current_backlog(sc, "kernel_wtb_sigma_rho");
  require_positive_s(s);
  const Envelope& env = require_envelope(sc, "kernel_wtb_sigma_rho");
  const int t = sc.eval_time;
  const int tau = sc.tau();
  const int N = sc.hops;
  const double lv = sc.channel->ln_v(s);
  const auto pre = backlog_prefix(sc);

  // sum_{u=1}^{t-1} V0^{-u} with V0 = e^{s*rho*ln2} V(s); the V0 = 1 case is
  // the series limit of t-1 equal terms inside log_geometric_sum.
  const double z = -(s * bits_to_log(env.rho_bits_per_slot) + lv);
  LogSumExp acc;
  acc.add(log_binomial(N + tau - 2, tau - 1) + log_geometric_sum(z, t - 1));
  for (int i = 0; i < N; ++i) {
    acc.add(log_binomial(i + tau - 1, tau - 1) + s * bits_to_log(pre[N - i]));
  }
  return tau * lv +
         s * bits_to_log(env.sigma_bits + env.rho_bits_per_slot * t) +
         acc.value();
}

double kernel_sotat(const Scenario& sc, double s) {
  require_current_backlog(sc, "kernel_sotat");
  require_positive_s(s);
  if (s >= 1.0) {
    throw ArgumentError("kernel_sotat requires s < 1 (Mellin validity)");
  }
  const int t = sc.eval_time;
  const int tau = sc.tau();
  const int N = sc.hops;
  const double lv = sc.channel->ln_v(s);
  LogSumExp acc;
  for (int u = 0; u <= t; ++u) {
    acc.add(s * sc.arrivals.log_ratio(u, t) +
            log_binomial(N - 1 + tau - u, tau - u) + (tau - u) * lv);
  }
  return s * static_cast<double>(N) * bits_to_log(sc.x_max()) + acc.value();
}

double kernel_sotat_sigma_rho(const Scenario& sc, double s) {
  if (sc.hops != 1) throw ArgumentError("kernel_sotat_sigma_rho requires N = 1");
  require_current_backlog(sc, "kernel_sotat_sigma_rho");
  require_positive_s(s);
  if (s >= 1.0) {
    throw ArgumentError("kernel_sotat_sigma_rho requires s < 1");
  }
  const Envelope& env = require_envelope(sc, "kernel_sotat_sigma_rho");
  const int t = sc.eval_time;
  const int w = sc.target_delay;
  const double lv = sc.channel->ln_v(s);
  const double lv0 = s * bits_to_log(env.rho_bits_per_slot) + lv;
  // e^{s(x1 - rho w)} V0^w [ e^{s sigma} sum_{k=1}^{t} V0^k + 1 ]
  LogSumExp bracket;
  bracket.add(s * bits_to_log(env.sigma_bits) + log_geometric_sum(lv0, t));
  bracket.add(0.0);
  return s * bits_to_log(sc.backlog_bits[0] - env.rho_bits_per_slot * w) +
         w * lv0 + bracket.value();
}

double kernel_stationary(const Scenario& sc, double s) {
  require_current_backlog(sc, "kernel_stationary");
  require_positive_s(s);
  const Envelope& env = require_envelope(sc, "kernel_stationary");
  const int w = sc.target_delay;
  const int N = sc.hops;
  const double lv0 =
      s * bits_to_log(env.rho_bits_per_slot) + sc.channel->ln_v(s);
  if (lv0 >= 0.0) return std::numeric_limits<double>::infinity();
  // Cross traffic dimensioned as sigma_c = x_max, rho_c = 0.
  double value = s * bits_to_log(-env.rho_bits_per_slot * w + env.sigma_bits +
                                 N * sc.x_max());
  value -= N * std::log(-std::expm1(lv0));
  value += std::min(0.0, w * lv0 + (N - 1) * std::log(static_cast<double>(w) + 1.0));
  return value;
}

namespace {

double family_s_cap(const Scenario& sc, BoundFamily family) {
  if (family == BoundFamily::sotat) return 1.0 - 1e-9;
  return sc.channel->max_exponent();
}

BoundResult run_minimizer(const std::function<double(double)>& log_f,
                          const Scenario& sc, BoundFamily family,
                          OptimizerConfig cfg) {
  const double cap = family_s_cap(sc, family);
  if (cfg.s_hi <= 0.0) cfg.s_hi = std::min(cap, cfg.hard_cap);
  cfg.s_hi = std::min(cfg.s_hi, cap);
  cfg.hard_cap = std::min(cfg.hard_cap, cap);
  MinimizeResult m = minimize_convex(log_f, cfg);
  BoundResult r;
  r.raw_log_value = m.log_min;
  r.probability = m.log_min >= 0.0 ? 1.0 : std::exp(m.log_min);
  r.s_opt = m.s_opt;
  r.evaluations = m.evaluations;
  r.at_boundary = m.at_lower || m.at_upper;
  return r;
}

}  // namespace

BoundResult bound(const Scenario& sc, BoundFamily family,
                  const OptimizerConfig& cfg) {
  sc.validate();
  switch (family) {
    case BoundFamily::stationary: {
      require_envelope(sc, "stationary bound");
      try {
        return run_minimizer([&](double s) { return kernel_stationary(sc, s); },
                             sc, family, cfg);
      } catch (const InfeasibleError&) {
        // No s with V0(s) < 1: the system is not stable under the envelope
        // rate, so the stationary bound degenerates to 1.
        BoundResult r;
        r.probability = 1.0;
        r.raw_log_value = std::numeric_limits<double>::infinity();
        r.feasible = false;
        return r;
      }
    }
    case BoundFamily::sotat:
      return run_minimizer([&](double s) { return kernel_sotat(sc, s); }, sc,
                           family, cfg);
    case BoundFamily::wtb:
      return run_minimizer([&](double s) { return kernel_wtb(sc, s); }, sc,
                           family, cfg);
    case BoundFamily::wtb_delayed:
      return run_minimizer([&](double s) { return kernel_wtb_delayed(sc, s); },
                           sc, family, cfg);
  }
  throw ArgumentError("unknown bound family");
}

BoundResult bound_backlog(const Scenario& sc, double threshold_bits,
                          const OptimizerConfig& cfg) {
  sc.validate();
  if (threshold_bits < 0.0) {
    throw ArgumentError("backlog threshold must be >= 0");
  }
  // The backlog corollary substitutes D(t) for D(tau): Phi is evaluated with
  // tau = t, i.e. the scenario's target delay plays no role here.
  const Scenario sc0 = sc.with_delay(0);
  const bool delayed = sc0.info_delay > 0;
  const double log_thresh = bits_to_log(threshold_bits);
  auto log_f = [&](double s) {
    const double phi =
        delayed ? kernel_wtb_delayed(sc0, s) : kernel_wtb(sc0, s);
    return -s * log_thresh + phi;
  };
  return run_minimizer(log_f, sc0,
                       delayed ? BoundFamily::wtb_delayed : BoundFamily::wtb,
                       cfg);
}

}  // namespace tnc
