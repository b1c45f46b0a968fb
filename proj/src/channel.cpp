#include "tnc/channel.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "tnc/errors.hpp"
#include "tnc/log_util.hpp"
#include "tnc/units.hpp"

namespace tnc {

namespace {

// ln V convergence target: successive node-doubled estimates of V must agree
// to this relative tolerance.
constexpr double kQuadRelTol = 1e-10;
constexpr int kQuadSizes[] = {32, 64, 128, 256, 512};

struct ScaledLaguerre {
  double ln;        // L_n(x), rescaled
  double lnm1;      // L_{n-1}(x), same scale
  double log_scale; // true value = stored * exp(log_scale)
};

// Three-term recurrence with dynamic rescaling so n = 512 stays finite even
// at nodes past 2000 where the raw polynomial values overflow.
ScaledLaguerre laguerre_pair(int n, double x) {
  double p1 = 1.0, p2 = 0.0, scale = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = ((2.0 * j - 1.0 - x) * p2 - (j - 1.0) * p3) / j;
    const double mag = std::max(std::abs(p1), std::abs(p2));
    if (mag > 1e120) {
      p1 *= 1e-120;
      p2 *= 1e-120;
      scale += std::log(1e120);
    } else if (mag > 0.0 && mag < 1e-120) {
      p1 *= 1e120;
      p2 *= 1e120;
      scale -= std::log(1e120);
    }
  }
  return {p1, p2, scale};
}

GaussLaguerreRule build_rule(int n) {
  GaussLaguerreRule rule;
  rule.nodes.resize(n);
  rule.log_weight_plus_node.resize(n);
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * n);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * n);
    } else {
      const double ai = i - 1;
      z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - rule.nodes[i - 2]);
    }
    ScaledLaguerre p{};
    double pp = 0.0;
    double best_z = z, best_dz = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      p = laguerre_pair(n, z);
      pp = n * (p.ln - p.lnm1) / z;  // L_n'(z), same scale as p.ln
      const double z1 = z;
      z = z1 - p.ln / pp;
      const double dz = std::abs(z - z1);
      if (dz < best_dz) {
        best_dz = dz;
        best_z = z;
      }
      if (dz <= 1e-13 * std::max(1.0, z)) {
        converged = true;
        break;
      }
    }
    if (!converged && best_dz <= 1e-11 * std::max(1.0, best_z)) {
      // Newton is oscillating at the FP noise floor around the root.
      z = best_z;
      converged = true;
    }
    if (!converged || !(z > 0.0) || !std::isfinite(z)) {
      throw NumericError("Gauss-Laguerre node " + std::to_string(i) +
                         " of " + std::to_string(n) + " did not converge");
    }
    p = laguerre_pair(n, z);
    pp = n * (p.ln - p.lnm1) / z;
    // w_i = -1 / (n * L_n'(x_i) * L_{n-1}(x_i)); stored as ln w_i + x_i.
    const double log_w = -std::log(static_cast<double>(n)) -
                         (std::log(std::abs(pp)) + p.log_scale) -
                         (std::log(std::abs(p.lnm1)) + p.log_scale);
    rule.nodes[i] = z;
    rule.log_weight_plus_node[i] = log_w + z;
  }
  return rule;
}

}  // namespace

const GaussLaguerreRule& gauss_laguerre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussLaguerreRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

ConstantChannel::ConstantChannel(double rate_bits) : rate_bits_(rate_bits) {
  if (rate_bits_ < 0.0) throw ArgumentError("constant rate must be >= 0");
}

double ConstantChannel::ln_v(double s) const {
  if (!(s > 0.0)) throw ArgumentError("ln_v requires s > 0");
  return -s * bits_to_log(rate_bits_);
}

RayleighChannel::RayleighChannel(double avg_snr_linear, double symbols_per_slot)
    : avg_snr_(avg_snr_linear), symbols_per_slot_(symbols_per_slot) {
  if (!(avg_snr_ > 0.0)) throw ArgumentError("average SNR must be > 0");
  if (!(symbols_per_slot_ > 0.0)) {
    throw ArgumentError("symbols per slot must be > 0");
  }
}

RayleighChannel RayleighChannel::from_db(double snr_db, double symbols_per_slot) {
  return RayleighChannel(std::pow(10.0, snr_db / 10.0), symbols_per_slot);
}

double RayleighChannel::capacity_from_gain(double y) const {
  if (y < 0.0) throw ArgumentError("channel gain must be >= 0");
  return symbols_per_slot_ * std::log1p(avg_snr_ * y) / kLnTwo;
}

double RayleighChannel::sample_capacity(RngStream& rng) const {
  return capacity_from_gain(rng.next_exp());
}

double RayleighChannel::ln_v_uncached(double s) const {
  if (!(s > 0.0)) throw ArgumentError("ln_v requires s > 0");
  const double a = s * symbols_per_slot_;
  const double g = avg_snr_;
  // Substituting y = beta*z keeps the integrand's decay O(1) in z for any a:
  // I = beta * int (1 + g*beta*z)^(-a) e^((1-beta)z) e^(-z) dz.
  const double beta = 1.0 / (1.0 + a * g);
  const double log_beta = std::log(beta);
  double prev = 0.0;
  bool have_prev = false;
  for (int n : kQuadSizes) {
    const GaussLaguerreRule& rule = gauss_laguerre(n);
    LogSumExp acc;
    for (int i = 0; i < n; ++i) {
      const double z = rule.nodes[i];
      acc.add(rule.log_weight_plus_node[i] - beta * z + log_beta -
              a * std::log1p(g * beta * z));
    }
    const double value = acc.value();
    if (have_prev &&
        std::abs(value - prev) <= kQuadRelTol * std::max(1.0, std::abs(value))) {
      return value;
    }
    prev = value;
    have_prev = true;
  }
  throw NumericError(
      "ln_v quadrature did not converge (s=" + std::to_string(s) +
      ", a=" + std::to_string(a) + ", avg_snr=" + std::to_string(g) + ")");
}

double RayleighChannel::ln_v(double s) const {
  const std::uint64_t key = std::bit_cast<std::uint64_t>(s);
  {
    std::shared_lock lock(cache_mutex_);
    auto it = ln_v_cache_.find(key);
    if (it != ln_v_cache_.end()) return it->second;
  }
  const double value = ln_v_uncached(s);
  std::unique_lock lock(cache_mutex_);
  ln_v_cache_.emplace(key, value);
  return value;
}

double RayleighChannel::mean_capacity() const {
  // E[m*log2(1 + g*Y)] by the same node-doubling rule.
  double prev = 0.0;
  bool have_prev = false;
  for (int n : kQuadSizes) {
    const GaussLaguerreRule& rule = gauss_laguerre(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double z = rule.nodes[i];
      const double log_w = rule.log_weight_plus_node[i] - z;
      if (log_w < -700.0) continue;
      sum += std::exp(log_w) * std::log1p(avg_snr_ * z);
    }
    const double value = symbols_per_slot_ * sum / kLnTwo;
    if (have_prev && std::abs(value - prev) <= 1e-10 * std::max(1.0, value)) {
      return value;
    }
    prev = value;
    have_prev = true;
  }
  throw NumericError("mean capacity quadrature did not converge");
}

}  // namespace tnc
