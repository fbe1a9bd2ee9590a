#pragma once

#include <span>
#include <utility>
#include <vector>

#include "cafesim/chain.hpp"
#include "cafesim/model.hpp"
#include "cafesim/parallel.hpp"
#include "cafesim/units.hpp"

namespace cafesim {

/// Forces over one chain at its current geometry.
///
/// Tensions are stored as magnitudes (never below the pretension floor).
/// Angles are measured from each CAFE toward its neighbor, positive when
/// the neighbor is higher, so tension * sin(angle) is the signed vertical
/// pull toward that neighbor. The horizontal residual |Tl cos(thl) -
/// Tr cos(thr)| is a diagnostic: a clamped platform's x is imposed by the
/// drive, so horizontal balance cannot generally hold mid-motion.
struct SegmentForces {
  std::vector<double> tension;              // per segment, magnitude, N
  std::vector<double> theta_left;           // per CAFE, rad
  std::vector<double> theta_right;          // per CAFE, rad
  std::vector<double> vertical_left;        // per CAFE, signed N
  std::vector<double> vertical_right;       // per CAFE, signed N
  std::vector<double> horizontal_residual;  // per CAFE, N

  int cafe_count() const { return static_cast<int>(theta_left.size()); }
};

/// Slope angles from CAFE i toward its left and right neighbors, signed by
/// the neighbor's relative height (neighbor lower -> negative). Throws
/// DegenerateGeometryError on coincident along-span positions.
std::pair<double, double> segment_angles(const CableChain& chain, int cafe_index);

/// Paper-signed segment tensions at CAFE i. Magnitude is
/// k_seg * max(0, L - L_rest) + pretension per side (a cable cannot be
/// compressed, so sub-rest lengths contribute nothing and the pretension
/// floor always remains). The sign flips negative when the CAFE sits above
/// that neighbor.
std::pair<double, double> segment_tensions(const CableChain& chain, int cafe_index);

/// Tension magnitude of one segment (node i to node i+1).
double tension_magnitude(const CableChain& chain, int segment_index);

/// Assembles tensions, angles and vertical components for the whole chain.
SegmentForces assemble_forces(const CableChain& chain);

/// Vertical acceleration of one CAFE:
///   z_ddot = (F_vl + F_vr - m g - c z_dot) / m
/// with F_vl/F_vr the signed vertical pulls from SegmentForces.
double vertical_acceleration(const CafeState& state, const SegmentForces& forces,
                             int cafe_index, double gravity = units::kGravity);

/// Data-parallel kernel: vertical accelerations of all interior nodes for
/// the given displacement/velocity state. Reads are shared, writes go to
/// distinct elements, so the Parallel path is bitwise identical to Serial.
void chain_accelerations(const CableChain& chain, std::span<const double> z,
                         std::span<const double> z_dot, std::span<const double> mass,
                         std::span<const double> damping, double gravity,
                         std::span<double> accel_out, Exec mode = Exec::Serial);

/// Reusable integrator state for one chain; avoids per-step allocation.
/// Along-span positions may be moved between steps via set_positions (the
/// drive advances x kinematically; a dynamics step holds x fixed).
class ChainDynamics {
 public:
  ChainDynamics(CableChain chain, std::span<const CafeState> cafes,
                double gravity = units::kGravity, Exec mode = Exec::Serial);

  /// One fixed-step classical Runge-Kutta (RK4) update of (z, z_dot) for
  /// all CAFEs simultaneously; tensions are re-evaluated at every sub-stage.
  /// Throws NumericalError when the state leaves the finite range.
  void step(double dt);

  /// Moves the interior nodes along the span and rebuilds rest lengths and
  /// segment stiffnesses (sliding contact). Order must stay strictly
  /// increasing.
  void set_positions(std::span<const double> cafe_x, const CableSystemConfig& config);

  const CableChain& chain() const { return chain_; }
  std::span<const double> z() const { return z_; }
  std::span<const double> z_dot() const { return z_dot_; }
  void set_state(std::span<const double> z, std::span<const double> z_dot);
  void set_damping(std::span<const double> damping);

  /// Floors the integration masses (relaxation aid for massless test
  /// particles); gravity keeps using the true weight, so the equilibrium
  /// point is unchanged.
  void use_pseudo_mass(double mass_floor);
  double mass(int i) const { return mass_[i]; }

  SegmentForces forces() const;
  /// Allocation-free per-row queries for trace recording.
  void tensions(std::span<double> out) const;              // per segment
  void horizontal_residuals(std::span<double> out) const;  // per CAFE node
  double max_abs_z_dot() const;
  /// Largest static vertical force residual |F_vl + F_vr - m g| over CAFEs.
  double max_static_residual() const;
  /// Upper bound on the tangent vertical stiffness seen by node i
  /// (elastic + geometric term per side); sizes stable relaxation steps.
  double stiffness_bound(int i) const;

 private:
  void accelerations(std::span<const double> z, std::span<const double> z_dot,
                     std::span<double> out) const;

  CableChain chain_;
  double gravity_;
  Exec mode_;
  std::vector<double> mass_, damping_, weight_;
  std::vector<double> z_, z_dot_;
  // RK4 stage buffers
  std::vector<double> k1z_, k1v_, k2z_, k2v_, k3z_, k3v_, k4z_, k4v_, tz_, tv_;
};

/// Convenience wrapper over ChainDynamics for one-off stepping: updates the
/// states' (z, z_dot) in chain order and returns end-of-step forces.
SegmentForces step_dynamics(const CableChain& chain, std::vector<CafeState>& states,
                            double dt, Exec mode = Exec::Serial);

struct EquilibriumOptions {
  double velocity_tolerance = 1e-8;   // m/s
  double force_tolerance = 1e-6;      // N, static residual per CAFE
  long max_iterations = 2'000'000;
  double forced_dt = 0.0;             // 0 = auto from stiffness bound
  double gravity = units::kGravity;
  Exec mode = Exec::Serial;
};

struct EquilibriumResult {
  std::vector<double> z;  // per interior node, chain order
  SegmentForces forces;
  double max_residual = 0.0;  // N
  long iterations = 0;
};

/// Static sag equilibrium by dynamic relaxation: the chain is integrated
/// with per-node critical damping until max |z_dot| and the static residual
/// fall under tolerance. The slack clamp makes the force field non-smooth,
/// which relaxation tolerates; the underlying potential is convex, so the
/// rest point is the unique equilibrium. Throws ConvergenceError (carrying
/// the residual reached) at the iteration cap or on divergence.
EquilibriumResult solve_equilibrium(const CableChain& chain, std::span<const CafeState> cafes,
                                    const EquilibriumOptions& options = {});

/// Per-CAFE equilibrium over a whole scenario, split at intermediate
/// anchors. Results are keyed by position in `cafes`.
struct ScenarioEquilibrium {
  std::vector<double> z;                   // per CAFE, input order
  std::vector<double> segment_tension;     // aggregated, left-to-right
  std::vector<double> horizontal_residual; // per CAFE, input order
  double max_residual = 0.0;
  long iterations = 0;
};

ScenarioEquilibrium solve_scenario_equilibrium(const CableSystemConfig& config,
                                               std::span<const CafeState> cafes,
                                               const EquilibriumOptions& options = {});

/// Vertical offset an arm controller adds to reach the anchor line:
/// compensation_i = -z*_i.
std::vector<double> sag_compensation(std::span<const double> equilibrium_z);

}  // namespace cafesim
