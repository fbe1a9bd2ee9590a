#pragma once

#include <numbers>

// All internal computation is in SI units. Paper-friendly units (kgf, mm,
// degrees) are accepted at the configuration boundary only.
namespace cafesim::units {

inline constexpr double kGravity = 9.80665;  // m/s^2, also the kgf conversion

constexpr double kgf_to_newton(double kgf) { return kgf * kGravity; }
constexpr double mm_to_m(double mm) { return mm * 1e-3; }
constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace cafesim::units
