#pragma once

#include <numbers>

namespace dpbulk {

inline constexpr double pi = std::numbers::pi;

/// Physical constants, CGS.
struct PhysicalConstants {
  double G;     ///< Newton gravitational constant, cm^3 g^-1 s^-2
  double hbar;  ///< reduced Planck constant, erg s
};

/// CODATA 2018 values in CGS. The same object is returned on every call.
constexpr PhysicalConstants constants() noexcept {
  return PhysicalConstants{6.67430e-8, 1.054571817e-27};
}

namespace units {
inline constexpr double amu = 1.66053906660e-24;  // g
inline constexpr double meter = 100.0;            // cm
}  // namespace units

}  // namespace dpbulk
