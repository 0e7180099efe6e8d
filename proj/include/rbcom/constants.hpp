#pragma once

#include <numbers>

namespace rbcom {

/// Speed of light in vacuum, exact SI value (m/s).
inline constexpr double kSpeedOfLight = 299'792'458.0;

inline constexpr double kPi = std::numbers::pi;

}  // namespace rbcom
