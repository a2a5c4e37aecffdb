#pragma once

#include <numbers>

namespace pscope::units {

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double elementary_charge = 1.602176634e-19;

/// Ordinary frequency in MHz to angular frequency in rad/s.
constexpr double mhz_to_angular(double mhz) { return two_pi * 1e6 * mhz; }

constexpr double angular_to_mhz(double omega) { return omega / (two_pi * 1e6); }

} // namespace pscope::units
