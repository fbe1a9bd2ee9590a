#include "cafesim/clamping.hpp"

#include <cmath>

#include "cafesim/error.hpp"

namespace cafesim {

ClampForceResult hertz_force(double deformation, const ClampingParams& params) {
  if (!(deformation >= 0.0))
    throw ArgumentError("hertz_force: deformation must be >= 0 (out of contact is 0)");
  const double force = (4.0 / 3.0) * params.effective_modulus *
                       std::sqrt(params.cam_radius) * std::pow(deformation, 1.5);
  return {force, params.friction_mu * force, deformation};
}

bool can_hold(const ClampForceResult& force, double required_tangential_force) {
  if (!(required_tangential_force >= 0.0))
    throw ArgumentError("can_hold: required force must be >= 0");
  return force.hold_capacity >= required_tangential_force;
}

ClampState step_clamp_state(const ClampState& state, std::optional<ClampMode> command,
                            double dt, const ClampingParams& params) {
  if (!(dt > 0.0)) throw ArgumentError("step_clamp_state: dt must be > 0");

  if (command) {
    if (state.transitioning)
      throw CommandConflictError("clamp command issued while a switch is in flight");
    if (*command == state.mode) return state;  // idempotent command
    // Full-latency switch; countdown starts on subsequent steps.
    ClampState next = ClampState::switching_to(*command, params.transition_duration);
    next.mode = state.mode;
    return next;
  }

  if (state.transitioning) {
    if (state.remaining_time <= dt) return ClampState::settled(state.target);
    ClampState next = state;
    next.remaining_time -= dt;
    return next;
  }
  return state;
}

}  // namespace cafesim
