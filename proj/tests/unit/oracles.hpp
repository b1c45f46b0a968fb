// Test-side oracles, kept deliberately independent of the kernel
// implementations: direct term enumeration of the bound expressions in
// extended precision and in the linear domain, exact combinatorial counts,
// and a transparently-literal tandem schedule for constant channels.
#ifndef TNC_TEST_ORACLES_HPP
#define TNC_TEST_ORACLES_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace oracles {

// C(n, k) exactly.
unsigned long long binom_ull(int n, int k);

// Brute-force value of the i-fold nested sum
//   sum_{u=1}^{tau} sum_{u1=1}^{u} ... sum_{u_{i-1}=1}^{u_{i-2}} 1
// (i = 0 means no sums: 1).
unsigned long long nested_sum_count(int depth, int tau);

// Direct enumeration of the N-hop transient bound expression at one s, in
// the linear domain with long doubles. A_bits(k) is the cumulative arrival
// mass A(k) in bits for k in [0, t]; V is the per-slot service Mellin value.
long double enum_phi(int n_hops, int t, int w,
                     const std::function<long double(int)>& A_bits,
                     const std::vector<double>& backlog_bits, long double V,
                     long double s);

// Same for the delayed-backlog variant: Aprime_bits(k) is the composite
// cumulative A'(k) for k in [-d, t], and the time axis starts at -d.
long double enum_phi_delayed(int n_hops, int t, int w, int d,
                             const std::function<long double(int)>& Aprime_bits,
                             const std::vector<double>& backlog_bits,
                             long double V, long double s);

// Direct sum of the stationary-machinery transient kernel (exact ratios).
long double enum_sotat(int n_hops, int t, int w,
                       const std::function<long double(int)>& A_bits,
                       double x_max_bits, long double V, long double s);

// Single-hop sotat sum with the ratios replaced by the (sigma, rho)
// envelope for u < t (the u = t ratio is exactly 1).
long double enum_sotat_envelope(int t, int w, double sigma, double rho,
                                double x1_bits, long double V, long double s);

// N-hop transient sum with every arrival factor replaced by the envelope.
long double enum_phi_envelope(int n_hops, int t, int w, double sigma,
                              double rho,
                              const std::vector<double>& backlog_bits,
                              long double V, long double s);

// Store-and-forward tandem schedule for given per-slot, per-node capacities
// (bits): returns cumulative path departures D(k), k = 0..slots. Initial
// backlog x_n sits at node n from slot 0; arrivals enter node 1.
std::vector<double> sf_schedule(int n_hops,
                                const std::vector<double>& arrivals_per_slot,
                                const std::vector<double>& backlog_bits,
                                const std::vector<std::vector<double>>& caps);

}  // namespace oracles

#endif  // TNC_TEST_ORACLES_HPP
