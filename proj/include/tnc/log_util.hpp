#ifndef TNC_LOG_UTIL_HPP
#define TNC_LOG_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

namespace tnc {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Streaming log-sum-exp: accumulates ln(sum_i exp(x_i)) without storing the
// terms. Rescales on a new maximum, so the running sum stays in [0, n].
class LogSumExp {
public:
  void add(double x) {
    if (x == kNegInf) return;
    if (x <= max_) {
      sum_ += std::exp(x - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    }
  }

  bool empty() const { return max_ == kNegInf; }

  double value() const {
    if (empty()) return kNegInf;
    return max_ + std::log(sum_);
  }

private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

inline double log_sum_exp(std::span<const double> xs) {
  LogSumExp acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

// ln C(n, k) via lgamma; exact enough (< 1e-13 relative) for the binomials
// that appear in the kernels (n up to a few hundred).
inline double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return kNegInf;
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// ln(sum_{k=1}^{count} e^{k*z}). The geometric sums of Cors. 1/2 in closed
// form, valid for any sign of z; the removable singularity at z = 0 (the
// ratio V0 = 1 case) is evaluated by its series limit: count equal terms.
inline double log_geometric_sum(double z, std::int64_t count) {
  if (count <= 0) return kNegInf;
  if (count == 1) return z;
  const double n = static_cast<double>(count);
  if (std::abs(z) * n < 1e-8) {
    // sum = n*(1 + z*(n+1)/2 + O(z^2 n^2))
    return std::log(n) + z * (n + 1.0) / 2.0;
  }
  // sum = e^z (e^{nz} - 1)/(e^z - 1); numerator/denominator share sign.
  return z + std::log(std::abs(std::expm1(n * z))) -
         std::log(std::abs(std::expm1(z)));
}

}  // namespace tnc

#endif  // TNC_LOG_UTIL_HPP
