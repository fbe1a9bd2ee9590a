#include "cafesim/kinematics.hpp"

#include <cmath>
#include <sstream>

#include "cafesim/error.hpp"

namespace cafesim {

DriveState drive_from(const CableSystemConfig& config) {
  return {config.surface_speed(), true};
}

double drive_displacement(double clamp_on_time, double clamp_off_time,
                          const DriveState& drive) {
  if (clamp_off_time < clamp_on_time)
    throw ArgumentError("drive_displacement: clamp-off precedes clamp-on");
  if (!drive.running) return 0.0;
  return drive.surface_speed * (clamp_off_time - clamp_on_time);
}

PlannedPosition advance_position(double x0, double z0, int direction, double delta_d,
                                 double incline_angle, double span_length) {
  if (direction < -1 || direction > 1)
    throw ArgumentError("advance_position: direction must be -1, 0 or +1");
  if (!(delta_d >= 0.0)) throw ArgumentError("advance_position: delta_d must be >= 0");

  const double x = direction * delta_d * std::cos(incline_angle) + x0;
  const double z = direction * delta_d * std::sin(incline_angle) + z0;
  if (x < 0.0 || x > span_length) {
    std::ostringstream os;
    os << "advance_position: x = " << x << " leaves [0, " << span_length
       << "] (platform would hit an anchor)";
    throw OutOfRangeError(os.str());
  }
  return {x, z};
}

MotionPlan::MotionPlan(std::size_t cafe_count, CoordinationMode mode)
    : segments_(cafe_count), mode_(mode) {}

void MotionPlan::add_segment(int cafe_id, const HoldSegment& segment,
                             double switch_latency) {
  if (cafe_id < 0 || static_cast<std::size_t>(cafe_id) >= segments_.size())
    throw ArgumentError("MotionPlan: cafe_id out of range");
  if (segment.clamp_off_time < segment.clamp_on_time)
    throw ArgumentError("MotionPlan: segment ends before it starts");

  auto& list = segments_[cafe_id];
  if (!list.empty()) {
    // One switch off plus one switch back on must fit between holds.
    const double earliest = list.back().clamp_off_time + 2.0 * switch_latency;
    if (segment.clamp_on_time < earliest) {
      std::ostringstream os;
      os << "segment for cafe " << cafe_id << " starting at t=" << segment.clamp_on_time
         << " overlaps the previous hold (earliest feasible t=" << earliest << ")";
      throw CommandConflictError(os.str());
    }
  }
  list.push_back(segment);
}

void MotionPlan::add_group(std::vector<int> cafe_ids) {
  groups_.push_back(std::move(cafe_ids));
}

const std::vector<HoldSegment>& MotionPlan::segments(int cafe_id) const {
  return segments_.at(static_cast<std::size_t>(cafe_id));
}

ClampTimeline MotionPlan::to_timeline(const ClampingParams& clamping) const {
  ClampTimeline timeline;
  timeline.resize(segments_.size());
  for (std::size_t id = 0; id < segments_.size(); ++id) {
    for (const auto& seg : segments_[id]) {
      if (seg.direction == 0 || seg.duration() == 0.0) continue;  // no-op hold
      const double command_time = seg.clamp_on_time - clamping.transition_duration;
      if (command_time < 0.0)
        throw ArgumentError("plan starts before the first switch can finish; "
                            "clamp-on must be >= transition_duration");
      const ClampMode mode =
          seg.direction > 0 ? ClampMode::Rightward : ClampMode::Leftward;
      timeline.commands[id].push_back({command_time, mode});
      timeline.commands[id].push_back({seg.clamp_off_time, ClampMode::Stationary});
    }
  }
  return timeline;
}

HoldSegment plan_move(const CafeState& cafe, double target_displacement, int direction,
                      const DriveState& drive, const CableSystemConfig& config,
                      double start_time) {
  if (!(target_displacement >= 0.0))
    throw ArgumentError("plan_move: target displacement must be >= 0");
  if (!(drive.surface_speed > 0.0) || !drive.running)
    throw ArgumentError("plan_move: drive is not running");
  if (direction == 0 && target_displacement > 0.0)
    throw ArgumentError("plan_move: nonzero move needs a direction");

  // Range check against the span before committing to timing.
  advance_position(cafe.x, cafe.z, direction, target_displacement, config.incline_angle,
                   config.span_length);

  const double hold = target_displacement / drive.surface_speed;
  return {start_time, start_time + hold, direction};
}

MotionPlan plan_cooperative(std::span<const int> group, std::span<const CafeState> cafes,
                            double shared_displacement, int direction,
                            const DriveState& drive, const CableSystemConfig& config,
                            double start_time) {
  if (group.empty()) throw ArgumentError("plan_cooperative: empty group");

  MotionPlan plan(cafes.size(), CoordinationMode::Cooperative);
  HoldSegment shared{};
  for (const int id : group) {
    if (id < 0 || static_cast<std::size_t>(id) >= cafes.size())
      throw ArgumentError("plan_cooperative: unknown cafe id " + std::to_string(id));
    try {
      shared = plan_move(cafes[id], shared_displacement, direction, drive, config,
                         start_time);
    } catch (const OutOfRangeError& e) {
      throw OutOfRangeError("cafe " + std::to_string(id) + ": " + e.what());
    }
  }
  // Identical tuple for every member keeps pairwise separations exact.
  for (const int id : group) plan.add_segment(id, shared, 0.0);
  plan.add_group(std::vector<int>(group.begin(), group.end()));
  return plan;
}

}  // namespace cafesim
