#ifndef TNC_RNG_HPP
#define TNC_RNG_HPP

#include <cmath>
#include <cstdint>

namespace tnc {

// xoshiro256** with splitmix64 seeding. Hand-rolled rather than <random> so
// that streams are bit-identical across platforms and standard libraries,
// which the reproducibility guarantees depend on.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  // Independent stream for one Monte Carlo trial. Derivation depends only on
  // (master_seed, trial_index), never on scheduling, so any thread count
  // reproduces the same draws.
  static RngStream for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
    return RngStream(master_seed + 0x9E3779B97F4A7C15ULL * (trial_index + 1));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on (0, 1]; never returns 0 so logs are safe.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Exp(1) draw.
  double next_exp() { return -std::log(next_unit()); }

private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace tnc

#endif  // TNC_RNG_HPP
