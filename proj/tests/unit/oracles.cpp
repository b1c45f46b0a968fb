#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracles {

namespace {

// In the library's unit convention a mass of b bits enters SNR-domain
// exponents as 2^(s*b).
long double pow2l(long double e) { return std::exp2(e); }

}  // namespace

unsigned long long binom_ull(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned long long>(n - k + i) /
        static_cast<unsigned long long>(i);
  }
  return r;
}

unsigned long long nested_sum_count(int depth, int tau) {
  if (depth == 0) return 1;
  unsigned long long total = 0;
  for (int u = 1; u <= tau; ++u) total += nested_sum_count(depth - 1, u);
  return total;
}

long double enum_phi(int n_hops, int t, int w,
                     const std::function<long double(int)>& A_bits,
                     const std::vector<double>& backlog_bits, long double V,
                     long double s) {
  const int tau = t + w;
  long double sum = 0.0L;
  const long double head =
      static_cast<long double>(binom_ull(n_hops + tau - 2, tau - 1));
  for (int u = 1; u <= t - 1; ++u) {
    sum += head * pow2l(s * (A_bits(t) - A_bits(u))) *
           std::pow(V, static_cast<long double>(tau - u));
  }
  for (int i = 0; i < n_hops; ++i) {
    long double xs = 0.0L;  // sum_{n=1}^{N-i} x_n
    for (int n = 0; n < n_hops - i; ++n) xs += backlog_bits[n];
    sum += static_cast<long double>(binom_ull(i + tau - 1, tau - 1)) *
           pow2l(s * A_bits(t)) * pow2l(s * xs) *
           std::pow(V, static_cast<long double>(tau));
  }
  return sum;
}

long double enum_phi_delayed(int n_hops, int t, int w, int d,
                             const std::function<long double(int)>& Aprime_bits,
                             const std::vector<double>& backlog_bits,
                             long double V, long double s) {
  // Re-indexed clock: the system starts at -d, so t -> t + d and
  // tau -> tau + d inside the sums while the ratios use A'.
  const int ts = t + d;
  const int taus = t + w + d;
  long double sum = 0.0L;
  const long double head =
      static_cast<long double>(binom_ull(n_hops + taus - 2, taus - 1));
  for (int us = 1; us <= ts - 1; ++us) {
    const int u = us - d;
    sum += head * pow2l(s * (Aprime_bits(t) - Aprime_bits(u))) *
           std::pow(V, static_cast<long double>(taus - us));
  }
  for (int i = 0; i < n_hops; ++i) {
    long double xs = 0.0L;
    for (int n = 0; n < n_hops - i; ++n) xs += backlog_bits[n];
    sum += static_cast<long double>(binom_ull(i + taus - 1, taus - 1)) *
           pow2l(s * Aprime_bits(t)) * pow2l(s * xs) *
           std::pow(V, static_cast<long double>(taus));
  }
  return sum;
}

long double enum_sotat(int n_hops, int t, int w,
                       const std::function<long double(int)>& A_bits,
                       double x_max_bits, long double V, long double s) {
  const int tau = t + w;
  long double sum = 0.0L;
  for (int u = 0; u <= t; ++u) {
    sum += static_cast<long double>(binom_ull(n_hops - 1 + tau - u, tau - u)) *
           pow2l(s * (A_bits(t) - A_bits(u))) *
           std::pow(V, static_cast<long double>(tau - u));
  }
  return pow2l(s * n_hops * static_cast<long double>(x_max_bits)) * sum;
}

long double enum_sotat_envelope(int t, int w, double sigma, double rho,
                                double x1_bits, long double V, long double s) {
  const int tau = t + w;
  long double sum = 0.0L;
  for (int u = 0; u <= t - 1; ++u) {
    sum += pow2l(s * (sigma + rho * (t - u))) *
           std::pow(V, static_cast<long double>(tau - u));
  }
  sum += std::pow(V, static_cast<long double>(w));  // u = t, exact ratio 1
  return pow2l(s * static_cast<long double>(x1_bits)) * sum;
}

long double enum_phi_envelope(int n_hops, int t, int w, double sigma,
                              double rho,
                              const std::vector<double>& backlog_bits,
                              long double V, long double s) {
  const int tau = t + w;
  long double sum = 0.0L;
  const long double head =
      static_cast<long double>(binom_ull(n_hops + tau - 2, tau - 1));
  for (int u = 1; u <= t - 1; ++u) {
    sum += head * pow2l(s * (sigma + rho * (t - u))) *
           std::pow(V, static_cast<long double>(tau - u));
  }
  for (int i = 0; i < n_hops; ++i) {
    long double xs = 0.0L;
    for (int n = 0; n < n_hops - i; ++n) xs += backlog_bits[n];
    sum += static_cast<long double>(binom_ull(i + tau - 1, tau - 1)) *
           pow2l(s * (sigma + rho * t)) * pow2l(s * xs) *
           std::pow(V, static_cast<long double>(tau));
  }
  return sum;
}

std::vector<double> sf_schedule(int n_hops,
                                const std::vector<double>& arrivals_per_slot,
                                const std::vector<double>& backlog_bits,
                                const std::vector<std::vector<double>>& caps) {
  std::vector<double> q(backlog_bits.begin(), backlog_bits.end());
  q.resize(n_hops, 0.0);
  std::vector<double> out(n_hops, 0.0);
  std::vector<double> D(1, 0.0);
  for (std::size_t slot = 0; slot < caps.size(); ++slot) {
    if (slot < arrivals_per_slot.size()) q[0] += arrivals_per_slot[slot];
    for (int n = 0; n < n_hops; ++n) {
      out[n] = std::min(q[n], caps[slot][n]);
      q[n] -= out[n];
    }
    for (int n = n_hops - 1; n >= 1; --n) q[n] += out[n - 1];
    D.push_back(D.back() + out[n_hops - 1]);
  }
  return D;
}

}  // namespace oracles
