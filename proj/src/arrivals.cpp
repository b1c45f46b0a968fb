#include "tnc/arrivals.hpp"

#include <algorithm>
#include <string>

#include "tnc/errors.hpp"
#include "tnc/units.hpp"

namespace tnc {

ArrivalProcess::ArrivalProcess(std::vector<double> increments_bits,
                               std::optional<Envelope> envelope)
    : increments_(std::move(increments_bits)), envelope_(envelope) {
  prefix_.resize(increments_.size() + 1, 0.0);
  for (std::size_t i = 0; i < increments_.size(); ++i) {
    if (increments_[i] < 0.0) {
      throw ArgumentError("arrival increment at slot " + std::to_string(i) +
                          " is negative");
    }
    prefix_[i + 1] = prefix_[i] + increments_[i];
  }
  total_ = prefix_.back();
  if (envelope_) {
    if (envelope_->sigma_bits < 0.0 || envelope_->rho_bits_per_slot < 0.0) {
      throw ArgumentError("envelope parameters must be non-negative");
    }
    const int T = horizon();
    for (int u = 0; u <= T; ++u) {
      for (int t = u; t <= T; ++t) {
        const double mass = prefix_[t] - prefix_[u];
        const double cap = envelope_->rho_bits_per_slot * (t - u) +
                           envelope_->sigma_bits;
        if (mass > cap + 1e-9) {
          throw ArgumentError(
              "declared (sigma,rho) envelope violated on slots [" +
              std::to_string(u) + "," + std::to_string(t) + "): " +
              std::to_string(mass) + " > " + std::to_string(cap));
        }
      }
    }
  }
}

ArrivalProcess ArrivalProcess::burst(double bits,
                                     std::optional<Envelope> envelope) {
  return ArrivalProcess({bits}, envelope);
}

ArrivalProcess ArrivalProcess::train(double rate_bits_per_slot, int slots,
                                     std::optional<Envelope> envelope) {
  if (slots < 0) throw ArgumentError("train length must be >= 0");
  return ArrivalProcess(
      std::vector<double>(static_cast<std::size_t>(slots), rate_bits_per_slot),
      envelope);
}

double ArrivalProcess::cumulative(int from_slot, int to_slot) const {
  if (from_slot < 0 || from_slot > to_slot) {
    throw ArgumentError("cumulative requires 0 <= u <= t (got u=" +
                        std::to_string(from_slot) + ", t=" +
                        std::to_string(to_slot) + ")");
  }
  const int T = horizon();
  const int u = std::min(from_slot, T);
  const int t = std::min(to_slot, T);
  return prefix_[t] - prefix_[u];
}

double ArrivalProcess::log_ratio(int from_slot, int to_slot) const {
  return bits_to_log(cumulative(from_slot, to_slot));
}

CompositeArrival::CompositeArrival(ArrivalProcess overhead,
                                   ArrivalProcess message,
                                   int info_delay_slots)
    : overhead_(std::move(overhead)),
      message_(std::move(message)),
      delay_(info_delay_slots) {
  if (delay_ < 0) throw ArgumentError("information delay must be >= 0");
  if (overhead_.horizon() != delay_) {
    throw ArgumentError("overhead process must cover exactly the d = " +
                        std::to_string(delay_) + " slots before the message");
  }
}

double CompositeArrival::cumulative(int from_slot, int to_slot) const {
  if (from_slot < -delay_ || from_slot > to_slot) {
    throw ArgumentError("composite cumulative requires -d <= u <= t (got u=" +
                        std::to_string(from_slot) + ", t=" +
                        std::to_string(to_slot) + ")");
  }
  // Overhead lives on [-d, 0): map slot k to overhead index k + d.
  const int ou = std::clamp(from_slot + delay_, 0, delay_);
  const int ot = std::clamp(to_slot + delay_, 0, delay_);
  double value = overhead_.cumulative(ou, ot);
  value += message_.cumulative(std::max(from_slot, 0), std::max(to_slot, 0));
  return value;
}

double CompositeArrival::log_ratio(int from_slot, int to_slot) const {
  return bits_to_log(cumulative(from_slot, to_slot));
}

}  // namespace tnc
