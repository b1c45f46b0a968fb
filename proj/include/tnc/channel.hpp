#ifndef TNC_CHANNEL_HPP
#define TNC_CHANNEL_HPP

#include <cstdint>
#include <limits>
#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "tnc/rng.hpp"

namespace tnc {

// Per-slot service-increment law of one wireless link. The bound kernels see
// it only through ln V(s) = ln E[exp(-s*C)] with C the per-slot capacity in
// natural-log units (bits * ln 2); the simulator sees it as a sampler of
// per-slot capacities in bits.
class ChannelModel {
public:
  virtual ~ChannelModel() = default;

  // ln E[exp(-s*C)], s > 0. Strictly decreasing and convex in s, and < 0
  // whenever the capacity is positive with positive probability.
  virtual double ln_v(double s) const = 0;

  // One i.i.d. per-slot capacity draw, in bits.
  virtual double sample_capacity(RngStream& rng) const = 0;

  // E[capacity] in bits per slot.
  virtual double mean_capacity() const = 0;

  // Largest s the model vouches for (optimizers clip their search to it).
  virtual double max_exponent() const {
    return std::numeric_limits<double>::infinity();
  }
};

// Deterministic link serving `rate` bits every slot. Analytic test double:
// ln V(s) = -s * rate * ln 2 exactly.
class ConstantChannel final : public ChannelModel {
public:
  explicit ConstantChannel(double rate_bits);

  double ln_v(double s) const override;
  double sample_capacity(RngStream&) const override { return rate_bits_; }
  double mean_capacity() const override { return rate_bits_; }
  double rate_bits() const { return rate_bits_; }

private:
  double rate_bits_;
};

// Rayleigh block fading with Shannon-capacity service: the per-slot capacity
// is m*log2(1 + avg_snr*Y) bits with Y ~ Exp(1), m = bandwidth x slot
// duration. ln V(s) is evaluated by adaptive Gauss-Laguerre quadrature of
//   integral_0^inf (1 + avg_snr*y)^(-s*m) e^(-y) dy,
// doubling the node count until successive estimates agree to 1e-10; the
// closed form with the upper incomplete gamma function is kept test-side as
// an independent cross-check.
class RayleighChannel final : public ChannelModel {
public:
  RayleighChannel(double avg_snr_linear, double symbols_per_slot);
  static RayleighChannel from_db(double snr_db, double symbols_per_slot);

  // Copies the parameters, not the memo cache.
  RayleighChannel(const RayleighChannel& other)
      : RayleighChannel(other.avg_snr_, other.symbols_per_slot_) {}
  RayleighChannel& operator=(const RayleighChannel&) = delete;

  double ln_v(double s) const override;
  double sample_capacity(RngStream& rng) const override;
  double mean_capacity() const override;

  // a = s*m above 100 is pointless for these bounds and stresses the gamma
  // cross-check, so the optimizer search is capped at s = 100/m.
  double max_exponent() const override { return 100.0 / symbols_per_slot_; }

  // Capacity in bits for a given channel gain draw y >= 0.
  double capacity_from_gain(double y) const;

  double avg_snr() const { return avg_snr_; }
  double symbols_per_slot() const { return symbols_per_slot_; }

private:
  double ln_v_uncached(double s) const;

  double avg_snr_;
  double symbols_per_slot_;

  // The kernels evaluate ln V at identical s thousands of times per sweep;
  // memoize per (channel, s). Guarded so shared channels stay thread-safe.
  mutable std::shared_mutex cache_mutex_;
  mutable std::unordered_map<std::uint64_t, double> ln_v_cache_;
};

// Gauss-Laguerre rule for weight e^{-y} on [0, inf). Weights are kept in log
// form (ln w_i + x_i, which stays well-scaled) so rules up to n = 512 nodes
// are usable even though the raw tail weights underflow doubles.
struct GaussLaguerreRule {
  std::vector<double> nodes;
  std::vector<double> log_weight_plus_node;  // ln(w_i) + x_i
};

// Cached rule for the given node count.
const GaussLaguerreRule& gauss_laguerre(int n);

}  // namespace tnc

#endif  // TNC_CHANNEL_HPP
