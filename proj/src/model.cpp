#include "cafesim/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cafesim/error.hpp"

namespace cafesim {

int direction_sign(ClampMode mode) {
  switch (mode) {
    case ClampMode::Leftward: return -1;
    case ClampMode::Rightward: return +1;
    case ClampMode::Stationary: return 0;
  }
  return 0;
}

std::string_view to_string(ClampMode mode) {
  switch (mode) {
    case ClampMode::Leftward: return "left";
    case ClampMode::Rightward: return "right";
    case ClampMode::Stationary: return "stationary";
  }
  return "stationary";
}

ClampMode clamp_mode_from_string(std::string_view name) {
  if (name == "left") return ClampMode::Leftward;
  if (name == "right") return ClampMode::Rightward;
  if (name == "stationary") return ClampMode::Stationary;
  throw ArgumentError("unknown clamp state '" + std::string(name) +
                      "' (expected left|right|stationary)");
}

std::string clamp_label(const ClampState& state) {
  if (state.transitioning) return "to_" + std::string(to_string(state.target));
  return std::string(to_string(state.mode));
}

bool ClampTimeline::empty() const {
  for (const auto& list : commands)
    if (!list.empty()) return false;
  return true;
}

double ClampTimeline::end_time() const {
  double end = 0.0;
  for (const auto& list : commands)
    if (!list.empty()) end = std::max(end, list.back().time);
  return end;
}

namespace {

void require(std::vector<Violation>& out, bool ok, const std::string& key,
             const std::string& message) {
  if (!ok) out.push_back({key, message});
}

void check_positive(std::vector<Violation>& out, double value, const std::string& key) {
  require(out, std::isfinite(value) && value > 0.0, key, "must be > 0");
}

std::string cafe_key(int id, const char* field) {
  std::ostringstream os;
  os << "cafes[" << id << "]." << field;
  return os.str();
}

}  // namespace

std::vector<Violation> validate(const Scenario& s) {
  std::vector<Violation> out;
  const auto& sys = s.system;

  check_positive(out, sys.span_length, "system.span_length_m");
  check_positive(out, sys.stiffness, "system.stiffness_n_per_m");
  require(out, std::isfinite(sys.pretension) && sys.pretension >= 0.0,
          "system.pretension", "must be >= 0");
  require(out, sys.load_bearing_cables >= 1, "system.load_bearing_cables", "must be >= 1");
  require(out, std::isfinite(sys.incline_angle) &&
              std::abs(sys.incline_angle) < std::numbers::pi / 2,
          "system.incline_deg", "|incline| must be < 90 degrees");
  check_positive(out, sys.roller_radius, "roller.radius_m");
  require(out, std::isfinite(sys.roller_omega) && sys.roller_omega >= 0.0,
          "roller.omega_rad_s", "must be >= 0");
  require(out, std::isfinite(sys.anchor_spacing) && sys.anchor_spacing >= 0.0,
          "system.anchor_spacing_m", "must be >= 0");

  const auto& cl = s.clamping;
  check_positive(out, cl.cam_radius, "clamping.cam_radius_m");
  check_positive(out, cl.effective_modulus, "clamping.effective_modulus_pa");
  check_positive(out, cl.cam_speed, "clamping.cam_speed_rad_s");
  check_positive(out, cl.transition_duration, "clamping.transition_duration_s");
  check_positive(out, cl.max_deformation, "clamping.max_deformation_m");
  check_positive(out, cl.friction_mu, "clamping.friction_mu");

  for (std::size_t i = 0; i < s.cafes.size(); ++i) {
    const auto& c = s.cafes[i];
    const int id = static_cast<int>(i);
    require(out, c.id == id, cafe_key(id, "id"), "must equal the array position");
    require(out, std::isfinite(c.mass) && c.mass > 0.0, cafe_key(id, "mass_kg"),
            "must be > 0");
    require(out, std::isfinite(c.damping) && c.damping >= 0.0, cafe_key(id, "damping_c"),
            "must be >= 0");
    require(out, std::isfinite(c.x) && c.x >= 0.0 && c.x <= sys.span_length,
            cafe_key(id, "x0_m"), "must lie in [0, span_length]");
  }

  // Timeline: ordered times, in-range ids, and no command while a switch
  // started by an earlier command is still in flight.
  for (std::size_t id = 0; id < s.timeline.commands.size(); ++id) {
    const auto& list = s.timeline.commands[id];
    if (id >= s.cafes.size() && !list.empty()) {
      require(out, false, "timeline", "cafe_id " + std::to_string(id) + " does not exist");
      continue;
    }
    double last_time = -1.0;
    double switch_end = 0.0;
    ClampMode settled = ClampMode::Stationary;
    for (const auto& cmd : list) {
      std::ostringstream key;
      key << "timeline[cafe " << id << ", t=" << cmd.time << "]";
      require(out, std::isfinite(cmd.time) && cmd.time >= 0.0, key.str(),
              "command time must be >= 0");
      require(out, cmd.time > last_time, key.str(),
              "command times must be strictly increasing");
      last_time = cmd.time;
      if (cmd.state == settled) continue;  // no-op command, no switch
      if (cmd.time < switch_end) {
        std::ostringstream msg;
        msg << "command overlaps the switch finishing at t=" << switch_end;
        require(out, false, key.str(), msg.str());
      }
      switch_end = cmd.time + s.clamping.transition_duration;
      settled = cmd.state;
    }
  }

  return out;
}

void validate_or_throw(const Scenario& s) {
  const auto violations = validate(s);
  if (violations.empty()) return;
  std::ostringstream os;
  os << violations.front().message;
  if (violations.size() > 1) os << " (+" << violations.size() - 1 << " more)";
  throw ValidationError(violations.front().key, os.str());
}

}  // namespace cafesim
