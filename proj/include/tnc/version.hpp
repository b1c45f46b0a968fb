#ifndef TNC_VERSION_HPP
#define TNC_VERSION_HPP

namespace tnc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tnc

#endif  // TNC_VERSION_HPP
