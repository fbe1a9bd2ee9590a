#pragma once

#include <optional>

#include "cafesim/model.hpp"

namespace cafesim {

/// Normal force and friction hold capacity of the engaged cam.
struct ClampForceResult {
  double normal_force = 0.0;   // N, >= 0
  double hold_capacity = 0.0;  // N, mu * normal_force
  double deformation = 0.0;    // m
};

/// Hertzian contact force of the cam against the deformable pad:
/// F = (4/3) * E * sqrt(R_c) * delta^(3/2). delta must be >= 0; a cam out of
/// contact is delta = 0, never negative.
ClampForceResult hertz_force(double deformation, const ClampingParams& params);

/// True iff the friction capacity covers the required tangential force.
/// Boundary inclusive: capacity == required holds.
bool can_hold(const ClampForceResult& force, double required_tangential_force);

/// Advances the clamp state machine by one fixed step.
///
/// A command on a settled state starts a transition of full
/// transition_duration (the countdown begins on subsequent steps);
/// commanding the already-settled mode is a no-op. A countdown settles
/// exactly when remaining_time <= dt. Commanding while a switch is in
/// flight throws CommandConflictError.
ClampState step_clamp_state(const ClampState& state, std::optional<ClampMode> command,
                            double dt, const ClampingParams& params);

/// True iff the state couples the platform to the moving drive cable.
inline bool drive_coupled(const ClampState& state) {
  return !state.transitioning && state.mode != ClampMode::Stationary;
}

}  // namespace cafesim
