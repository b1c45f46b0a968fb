#ifndef TNC_UNITS_HPP
#define TNC_UNITS_HPP

namespace tnc {

// All public quantities are in bits. Kernels work in the natural-log SNR
// domain where a quantity of b bits contributes b*ln(2), so that
// exp(s * bits_to_log(b)) = 2^(s*b). The kernels only ever consume products
// s * (log units); the choice is internal and covered by the
// unit-consistency tests.
inline constexpr double kLnTwo = 0.6931471805599453094172321214581766;

constexpr double bits_to_log(double bits) { return bits * kLnTwo; }
constexpr double log_to_bits(double log_units) { return log_units / kLnTwo; }

}  // namespace tnc

#endif  // TNC_UNITS_HPP
