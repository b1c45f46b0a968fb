#ifndef TNC_ARRIVALS_HPP
#define TNC_ARRIVALS_HPP

#include <optional>
#include <vector>

namespace tnc {

// Deterministic (sigma, rho) traffic envelope: A(t) - A(u) <= rho*(t-u) + sigma.
struct Envelope {
  double sigma_bits = 0.0;
  double rho_bits_per_slot = 0.0;
};

// Finite-horizon deterministic arrival sequence. Slot i carries a_i bits for
// i in [0, T); slots outside the horizon contribute nothing. Immutable after
// construction, safe to share across threads.
class ArrivalProcess {
public:
  ArrivalProcess() = default;

  // Throws ArgumentError on negative increments or, when an envelope is
  // declared, if any (u, t) pair on the horizon violates it.
  explicit ArrivalProcess(std::vector<double> increments_bits,
                          std::optional<Envelope> envelope = std::nullopt);

  // Single burst of `bits` at slot 0 (T = 1).
  static ArrivalProcess burst(double bits,
                              std::optional<Envelope> envelope = std::nullopt);

  // Constant-rate train: `slots` slots of `rate_bits_per_slot` each.
  static ArrivalProcess train(double rate_bits_per_slot, int slots,
                              std::optional<Envelope> envelope = std::nullopt);

  // A(u, t) = sum_{i=u}^{t-1} a_i in bits. Requires 0 <= u <= t.
  double cumulative(int from_slot, int to_slot) const;

  // (A(t) - A(u)) in natural-log SNR-domain units, i.e. cumulative * ln 2.
  double log_ratio(int from_slot, int to_slot) const;

  double total_bits() const { return total_; }
  int horizon() const { return static_cast<int>(increments_.size()); }
  const std::vector<double>& increments() const { return increments_; }
  const std::optional<Envelope>& envelope() const { return envelope_; }

private:
  std::vector<double> increments_;
  std::vector<double> prefix_;  // prefix_[k] = A(0, k), k in [0, T]
  double total_ = 0.0;
  std::optional<Envelope> envelope_;
};

// Composite arrival process A' for delayed backlog information: stationary
// overhead traffic on slots [-d, 0) followed by the message on [0, T). The
// cumulative value freezes once the message ends.
class CompositeArrival {
public:
  // overhead.horizon() must equal info_delay_slots.
  CompositeArrival(ArrivalProcess overhead, ArrivalProcess message,
                   int info_delay_slots);

  // A'(u, t) in bits; slots are message-frame (system starts at -d).
  // Requires -d <= u <= t.
  double cumulative(int from_slot, int to_slot) const;

  // (A'(t) - A'(u)) * ln 2.
  double log_ratio(int from_slot, int to_slot) const;

  // A'(t) measured from the system start -d.
  double total_until(int t) const { return cumulative(-delay_, t); }

  int delay() const { return delay_; }
  const ArrivalProcess& message() const { return message_; }
  const ArrivalProcess& overhead() const { return overhead_; }

private:
  ArrivalProcess overhead_;
  ArrivalProcess message_;
  int delay_ = 0;
};

}  // namespace tnc

#endif  // TNC_ARRIVALS_HPP
