#pragma once

#include <cstdint>

namespace cafesim {

/// Open-loop error injection attached to the shared drive cable.
///
/// Two zero-mean sources emulate cumulative drive-side error (knots,
/// pulleys): a displacement offset drawn per clamp event and a drift rate
/// drawn per meter of cumulative drive travel. Both are keyed purely on the
/// seed and the drive's cumulative displacement, so platforms that clamp at
/// the same instants experience identical perturbations and their
/// separation stays exact; platforms clamping at different times sample
/// different stretches of the drift process.
class DriveNoise {
 public:
  DriveNoise(std::uint64_t seed, double drift_sigma_per_meter, double event_sigma);

  /// Dimensionless drift rate (m of error per m of travel), piecewise
  /// constant over 1 m bins of cumulative drive displacement.
  double drift_rate(double drive_displacement) const;

  /// Displacement offset (m) applied at a clamp event; quantizes the drive
  /// displacement to 0.1 mm so simultaneous events share one draw.
  double event_offset(double drive_displacement, int direction, bool engaging) const;

  double drift_sigma() const { return drift_sigma_; }
  double event_sigma() const { return event_sigma_; }

 private:
  std::uint64_t seed_;
  double drift_sigma_;
  double event_sigma_;
};

/// Deterministic standard normal from (seed, key): splitmix64 bit mixing
/// plus Box-Muller, identical on every platform.
double hashed_normal(std::uint64_t seed, std::uint64_t key);

}  // namespace cafesim
