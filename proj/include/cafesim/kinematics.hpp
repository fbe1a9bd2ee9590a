#pragma once

#include <span>
#include <vector>

#include "cafesim/model.hpp"

namespace cafesim {

/// The roller drive as seen by the platforms: a cable surface moving at
/// r * omega, modeled as an ideal constant-speed source.
struct DriveState {
  double surface_speed = 0.0;  // m/s, >= 0
  bool running = true;

  bool operator==(const DriveState&) const = default;
};

DriveState drive_from(const CableSystemConfig& config);

/// Linear displacement of the driving cable over a held interval:
/// delta_D = surface_speed * (t_off - t_on). Throws ArgumentError if
/// t_off < t_on.
double drive_displacement(double clamp_on_time, double clamp_off_time,
                          const DriveState& drive);

struct PlannedPosition {
  double x = 0.0;          // m along span
  double z_nominal = 0.0;  // m, rigid-cable vertical (sag comes from dynamics)
};

/// Open-loop position update for one held interval:
///   x = s * delta_D * cos(incline) + x0,  z = s * delta_D * sin(incline) + z0.
/// Throws OutOfRangeError if the resulting x leaves [0, span_length].
PlannedPosition advance_position(double x0, double z0, int direction, double delta_d,
                                 double incline_angle, double span_length);

/// One clamp-hold interval: coupled to the drive from clamp_on_time to
/// clamp_off_time, moving with the given direction sign.
struct HoldSegment {
  double clamp_on_time = 0.0;   // s (t_s)
  double clamp_off_time = 0.0;  // s (t_a), >= clamp_on_time
  int direction = 0;            // -1 | 0 | +1

  double duration() const { return clamp_off_time - clamp_on_time; }
  bool operator==(const HoldSegment&) const = default;
};

enum class CoordinationMode { Independent, Cooperative, Mixed };

/// Per-CAFE hold segments plus the coordination tag. Cooperative groups
/// share identical (t_s, t_a, s) tuples so the shared drive preserves their
/// separations exactly.
class MotionPlan {
 public:
  explicit MotionPlan(std::size_t cafe_count,
                      CoordinationMode mode = CoordinationMode::Independent);

  /// Appends a segment, enforcing non-overlap including the switch latency:
  /// a following segment needs clamp_on >= previous clamp_off + 2 * latency
  /// (one switch off, one switch back on). Throws CommandConflictError.
  void add_segment(int cafe_id, const HoldSegment& segment, double switch_latency);

  /// Marks a set of CAFEs as a cooperative group (identical segments).
  void add_group(std::vector<int> cafe_ids);

  const std::vector<HoldSegment>& segments(int cafe_id) const;
  std::size_t cafe_count() const { return segments_.size(); }
  CoordinationMode mode() const { return mode_; }
  void set_mode(CoordinationMode mode) { mode_ = mode; }
  const std::vector<std::vector<int>>& groups() const { return groups_; }

  /// Lowers the plan to clamp commands: the drive-direction command is
  /// issued transition_duration before clamp_on so coupling begins exactly
  /// at clamp_on; the Stationary command is issued at clamp_off. Earliest
  /// clamp_on must be >= transition_duration.
  ClampTimeline to_timeline(const ClampingParams& clamping) const;

 private:
  std::vector<std::vector<HoldSegment>> segments_;
  std::vector<std::vector<int>> groups_;
  CoordinationMode mode_;
};

/// Plans one hold interval moving `cafe` by target_displacement (>= 0) in
/// the given direction, starting to couple at start_time. Throws
/// OutOfRangeError when the move leaves [0, span]; ArgumentError on a
/// stopped drive or a directionless nonzero move.
HoldSegment plan_move(const CafeState& cafe, double target_displacement, int direction,
                      const DriveState& drive, const CableSystemConfig& config,
                      double start_time);

/// Plans the identical hold interval for every group member and returns a
/// Cooperative plan over `cafes`. Pairwise separations are preserved exactly.
/// Throws ArgumentError on an empty group, OutOfRangeError naming any member
/// whose move leaves the span.
MotionPlan plan_cooperative(std::span<const int> group, std::span<const CafeState> cafes,
                            double shared_displacement, int direction,
                            const DriveState& drive, const CableSystemConfig& config,
                            double start_time);

}  // namespace cafesim
