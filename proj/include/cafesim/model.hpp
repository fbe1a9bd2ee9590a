#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cafesim {

/// The three settled clamp targets. Leftward grips the lower strand of the
/// drive loop, Rightward the upper strand, Stationary the anchored cable.
enum class ClampMode { Leftward, Rightward, Stationary };

/// Drive direction sign: Leftward -1, Stationary 0, Rightward +1.
int direction_sign(ClampMode mode);

std::string_view to_string(ClampMode mode);
ClampMode clamp_mode_from_string(std::string_view name);  // "left"|"right"|"stationary"

/// Clamp state: either settled on a mode or mid-switch toward a target.
/// While transitioning the platform holds its along-span position; drive
/// coupling exists only in a settled Leftward/Rightward state.
struct ClampState {
  ClampMode mode = ClampMode::Stationary;
  bool transitioning = false;
  ClampMode target = ClampMode::Stationary;  // valid while transitioning
  double remaining_time = 0.0;               // s, in (0, transition_duration]

  static ClampState settled(ClampMode m) { return {m, false, m, 0.0}; }
  static ClampState switching_to(ClampMode tgt, double remaining) {
    return {ClampMode::Stationary, true, tgt, remaining};
  }

  bool settled_as(ClampMode m) const { return !transitioning && mode == m; }
  bool operator==(const ClampState&) const = default;
};

/// Short state label used in traces: left / right / stationary / to_<target>.
std::string clamp_label(const ClampState& state);

/// Geometry, stiffness and pretension of the shared cable set.
///
/// `stiffness` is the measured end-to-end stiffness of one full-span cable;
/// a segment of rest length L has stiffness k * span_length / L (axial
/// stiffness scales inversely with length). `load_bearing_cables` counts the
/// strands that share the robots' weight; tension and stiffness aggregate
/// linearly across them.
struct CableSystemConfig {
  double span_length = 0.0;      // m, > 0
  double incline_angle = 0.0;    // rad, |angle| < pi/2, run vs. horizontal
  double stiffness = 0.0;        // N/m per cable at full span, > 0
  double pretension = 0.0;       // N per cable, >= 0
  int load_bearing_cables = 1;   // >= 1
  double roller_radius = 0.0;    // m, > 0
  double roller_omega = 0.0;     // rad/s, >= 0
  double anchor_spacing = 0.0;   // m, 0 = no intermediate anchors

  double surface_speed() const { return roller_radius * roller_omega; }
  double total_pretension() const { return pretension * load_bearing_cables; }
  double segment_stiffness(double rest_length) const {
    return stiffness * load_bearing_cables * span_length / rest_length;
  }

  bool operator==(const CableSystemConfig&) const = default;
};

/// One platform: point mass riding the cable set.
struct CafeState {
  int id = 0;
  double mass = 0.0;     // kg, > 0
  double x = 0.0;        // m along span, in [0, span_length]
  double z = 0.0;        // m vertical, 0 at the anchor line
  double z_dot = 0.0;    // m/s
  double damping = 0.0;  // N s/m, >= 0
  ClampState clamp = ClampState::settled(ClampMode::Stationary);

  bool operator==(const CafeState&) const = default;
};

/// Cam clamp parameters: Hertzian contact inputs, cam angles for the three
/// settled states, and the switch latency.
struct ClampingParams {
  double cam_radius = 0.0;           // m, > 0
  double effective_modulus = 0.0;    // Pa, > 0 (single effective value)
  double theta_left = 0.0;           // rad, cam angle for Leftward
  double theta_right = 0.0;          // rad, cam angle for Rightward
  double theta_stationary = 0.0;     // rad, cam angle for Stationary
  double cam_speed = 0.0;            // rad/s, > 0
  double transition_duration = 0.0;  // s, > 0
  double max_deformation = 0.0;      // m, > 0, fully engaged cam
  double friction_mu = 0.0;          // > 0

  bool operator==(const ClampingParams&) const = default;
};

/// One timed clamp command.
struct ClampCommand {
  double time = 0.0;  // s, >= 0
  ClampMode state = ClampMode::Stationary;

  bool operator==(const ClampCommand&) const = default;
};

/// Time-ordered clamp commands per CAFE; the open-loop control input.
struct ClampTimeline {
  std::vector<std::vector<ClampCommand>> commands;  // indexed by CAFE id

  void resize(std::size_t cafe_count) { commands.resize(cafe_count); }
  std::size_t cafe_count() const { return commands.size(); }
  bool empty() const;
  double end_time() const;  // last command time, 0 if empty

  bool operator==(const ClampTimeline&) const = default;
};

/// Full scenario: the configuration tuple a document loads into.
struct Scenario {
  CableSystemConfig system;
  ClampingParams clamping;
  std::vector<CafeState> cafes;
  ClampTimeline timeline;

  bool operator==(const Scenario&) const = default;
};

/// One invariant violation, keyed by the configuration path.
struct Violation {
  std::string key;
  std::string message;
};

/// Checks every type invariant plus timeline ordering and switch-latency
/// conflicts. Returns all violations found (empty = valid).
std::vector<Violation> validate(const Scenario& scenario);

/// Throws ValidationError on the first violation.
void validate_or_throw(const Scenario& scenario);

}  // namespace cafesim
