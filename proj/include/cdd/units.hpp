#pragma once

#include <numbers>

namespace cdd {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// All internal frequencies are angular (rad/s).  Configuration files and
// CSV outputs use ordinary frequency in Hz.
inline constexpr double hz_to_rad(double hz) { return kTwoPi * hz; }
inline constexpr double rad_to_hz(double rad) { return rad / kTwoPi; }

inline constexpr double kMainsFrequencyHz = 50.0;

}  // namespace cdd
