#include "cafesim/noise.hpp"

#include <cmath>
#include <numbers>

namespace cafesim {

namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double uniform01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0, 1)
}

}  // namespace

double hashed_normal(std::uint64_t seed, std::uint64_t key) {
  const std::uint64_t h1 = splitmix64(seed ^ splitmix64(key));
  const std::uint64_t h2 = splitmix64(h1);
  const double u1 = std::max(uniform01(h1), 0x1.0p-53);  // keep log finite
  const double u2 = uniform01(h2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

DriveNoise::DriveNoise(std::uint64_t seed, double drift_sigma_per_meter, double event_sigma)
    : seed_(seed), drift_sigma_(drift_sigma_per_meter), event_sigma_(event_sigma) {}

double DriveNoise::drift_rate(double drive_displacement) const {
  const auto bin = static_cast<std::uint64_t>(
      static_cast<std::int64_t>(std::floor(drive_displacement)));
  return drift_sigma_ * hashed_normal(seed_, 0x5452494654ULL ^ (bin * 0x10001ULL));
}

double DriveNoise::event_offset(double drive_displacement, int direction,
                                bool engaging) const {
  // Quantized to 0.1 mm of drive travel: simultaneous clamps share a draw.
  const auto q = static_cast<std::uint64_t>(
      static_cast<std::int64_t>(std::llround(drive_displacement / 1e-4)));
  std::uint64_t key = 0x4556454e54ULL ^ (q * 0x9e3779b1ULL);
  key ^= static_cast<std::uint64_t>(direction + 2) << 60;
  key ^= static_cast<std::uint64_t>(engaging ? 1 : 0) << 59;
  return event_sigma_ * hashed_normal(seed_, key);
}

}  // namespace cafesim
