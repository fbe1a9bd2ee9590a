#include "cafesim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cafesim/error.hpp"

namespace cafesim {

namespace {

// Per-side geometry of an interior node: slope angle toward the neighbor
// (positive when the neighbor is higher) and tension magnitude with the
// slack clamp and the pretension floor.
struct Side {
  double length;
  double sin_theta;  // (z_neighbor - z_node) / length
  double cos_theta;
  double tension;
};

inline Side side_of(double dx, double z_node, double z_neighbor, double rest,
                    double stiffness, double pretension) {
  const double dz = z_neighbor - z_node;
  const double length = std::sqrt(dx * dx + dz * dz);
  const double elongation = std::max(0.0, length - rest);
  return {length, dz / length, dx / length, stiffness * elongation + pretension};
}

// Interior node i of a chain with displacement state z (anchors stay 0).
inline Side left_side(const CableChain& c, std::span<const double> z, int i) {
  const double zl = i == 0 ? 0.0 : z[i - 1];
  return side_of(c.node_x[i + 1] - c.node_x[i], z[i], zl, c.rest_length[i],
                 c.stiffness[i], c.pretension);
}

inline Side right_side(const CableChain& c, std::span<const double> z, int i) {
  const int n = c.cafe_count();
  const double zr = i == n - 1 ? 0.0 : z[i + 1];
  return side_of(c.node_x[i + 2] - c.node_x[i + 1], z[i], zr, c.rest_length[i + 1],
                 c.stiffness[i + 1], c.pretension);
}

inline double node_acceleration(const CableChain& c, std::span<const double> z,
                                double z_dot, double weight, double mass,
                                double damping, int i) {
  const Side l = left_side(c, z, i);
  const Side r = right_side(c, z, i);
  const double vertical = l.tension * l.sin_theta + r.tension * r.sin_theta;
  return (vertical - weight - damping * z_dot) / mass;
}

void check_cafe_index(const CableChain& chain, int cafe_index) {
  if (cafe_index < 0 || cafe_index >= chain.cafe_count())
    throw ArgumentError("cafe index out of range for this chain");
}

std::size_t index_of_cafe(std::span<const CafeState> cafes, int id) {
  for (std::size_t i = 0; i < cafes.size(); ++i)
    if (cafes[i].id == id) return i;
  throw ArgumentError("no CafeState with id " + std::to_string(id));
}

}  // namespace

std::pair<double, double> segment_angles(const CableChain& chain, int cafe_index) {
  check_cafe_index(chain, cafe_index);
  const int j = cafe_index + 1;
  const double dxl = chain.node_x[j] - chain.node_x[j - 1];
  const double dxr = chain.node_x[j + 1] - chain.node_x[j];
  if (dxl <= 0.0 || dxr <= 0.0)
    throw DegenerateGeometryError("segment_angles: coincident along-span positions");
  // Signed by the neighbor's relative height: neighbor lower -> negative.
  const double theta_l = std::atan2(chain.node_z[j - 1] - chain.node_z[j], dxl);
  const double theta_r = std::atan2(chain.node_z[j + 1] - chain.node_z[j], dxr);
  return {theta_l, theta_r};
}

double tension_magnitude(const CableChain& chain, int segment_index) {
  if (segment_index < 0 || segment_index >= chain.segment_count())
    throw ArgumentError("segment index out of range");
  const double dx = chain.node_x[segment_index + 1] - chain.node_x[segment_index];
  const double dz = chain.node_z[segment_index + 1] - chain.node_z[segment_index];
  const double length = std::sqrt(dx * dx + dz * dz);
  const double elongation = std::max(0.0, length - chain.rest_length[segment_index]);
  return chain.stiffness[segment_index] * elongation + chain.pretension;
}

std::pair<double, double> segment_tensions(const CableChain& chain, int cafe_index) {
  check_cafe_index(chain, cafe_index);
  const int j = cafe_index + 1;
  double t_l = tension_magnitude(chain, j - 1);
  double t_r = tension_magnitude(chain, j);
  // Sign rule: negative when the platform sits above that neighbor.
  if (chain.node_z[j] > chain.node_z[j - 1]) t_l = -t_l;
  if (chain.node_z[j] > chain.node_z[j + 1]) t_r = -t_r;
  return {t_l, t_r};
}

SegmentForces assemble_forces(const CableChain& chain) {
  const int n = chain.cafe_count();
  SegmentForces f;
  f.tension.resize(chain.segment_count());
  for (int s = 0; s < chain.segment_count(); ++s) f.tension[s] = tension_magnitude(chain, s);
  f.theta_left.resize(n);
  f.theta_right.resize(n);
  f.vertical_left.resize(n);
  f.vertical_right.resize(n);
  f.horizontal_residual.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto [theta_l, theta_r] = segment_angles(chain, i);
    f.theta_left[i] = theta_l;
    f.theta_right[i] = theta_r;
    f.vertical_left[i] = f.tension[i] * std::sin(theta_l);
    f.vertical_right[i] = f.tension[i + 1] * std::sin(theta_r);
    f.horizontal_residual[i] =
        std::abs(f.tension[i] * std::cos(theta_l) - f.tension[i + 1] * std::cos(theta_r));
  }
  return f;
}

double vertical_acceleration(const CafeState& state, const SegmentForces& forces,
                             int cafe_index, double gravity) {
  const double vertical =
      forces.vertical_left.at(cafe_index) + forces.vertical_right.at(cafe_index);
  return (vertical - state.mass * gravity - state.damping * state.z_dot) / state.mass;
}

void chain_accelerations(const CableChain& chain, std::span<const double> z,
                         std::span<const double> z_dot, std::span<const double> mass,
                         std::span<const double> damping, double gravity,
                         std::span<double> accel_out, Exec mode) {
  const int n = chain.cafe_count();
  if (mode == Exec::Parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
      accel_out[i] = node_acceleration(chain, z, z_dot[i], mass[i] * gravity, mass[i],
                                       damping[i], i);
    return;
#endif
  }
  for (int i = 0; i < n; ++i)
    accel_out[i] = node_acceleration(chain, z, z_dot[i], mass[i] * gravity, mass[i],
                                     damping[i], i);
}

ChainDynamics::ChainDynamics(CableChain chain, std::span<const CafeState> cafes,
                             double gravity, Exec mode)
    : chain_(std::move(chain)), gravity_(gravity), mode_(mode) {
  const int n = chain_.cafe_count();
  mass_.resize(n);
  damping_.resize(n);
  z_.resize(n);
  z_dot_.resize(n);
  weight_.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto& cafe = cafes[index_of_cafe(cafes, chain_.cafe_ids[i])];
    mass_[i] = cafe.mass;
    damping_[i] = cafe.damping;
    weight_[i] = cafe.mass * gravity_;
    z_[i] = cafe.z;
    z_dot_[i] = cafe.z_dot;
    chain_.node_z[i + 1] = cafe.z;
  }
  for (auto* buf : {&k1z_, &k1v_, &k2z_, &k2v_, &k3z_, &k3v_, &k4z_, &k4v_, &tz_, &tv_})
    buf->resize(n);
}

void ChainDynamics::accelerations(std::span<const double> z, std::span<const double> z_dot,
                                  std::span<double> out) const {
  const int n = chain_.cafe_count();
  if (mode_ == Exec::Parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
      out[i] = node_acceleration(chain_, z, z_dot[i], weight_[i], mass_[i], damping_[i], i);
    return;
#endif
  }
  for (int i = 0; i < n; ++i)
    out[i] = node_acceleration(chain_, z, z_dot[i], weight_[i], mass_[i], damping_[i], i);
}

void ChainDynamics::step(double dt) {
  if (!(dt > 0.0)) throw ArgumentError("ChainDynamics::step: dt must be > 0");
  const int n = chain_.cafe_count();
  if (n == 0) return;
  const double half = 0.5 * dt;

  // Classical RK4 on (z, z_dot); tensions re-evaluated at every sub-stage.
  std::copy(z_dot_.begin(), z_dot_.end(), k1z_.begin());
  accelerations(z_, z_dot_, k1v_);

  for (int i = 0; i < n; ++i) {
    tz_[i] = z_[i] + half * k1z_[i];
    tv_[i] = z_dot_[i] + half * k1v_[i];
  }
  std::copy(tv_.begin(), tv_.end(), k2z_.begin());
  accelerations(tz_, tv_, k2v_);

  for (int i = 0; i < n; ++i) {
    tz_[i] = z_[i] + half * k2z_[i];
    tv_[i] = z_dot_[i] + half * k2v_[i];
  }
  std::copy(tv_.begin(), tv_.end(), k3z_.begin());
  accelerations(tz_, tv_, k3v_);

  for (int i = 0; i < n; ++i) {
    tz_[i] = z_[i] + dt * k3z_[i];
    tv_[i] = z_dot_[i] + dt * k3v_[i];
  }
  std::copy(tv_.begin(), tv_.end(), k4z_.begin());
  accelerations(tz_, tv_, k4v_);

  const double sixth = dt / 6.0;
  bool finite = true;
  for (int i = 0; i < n; ++i) {
    z_[i] += sixth * (k1z_[i] + 2.0 * (k2z_[i] + k3z_[i]) + k4z_[i]);
    z_dot_[i] += sixth * (k1v_[i] + 2.0 * (k2v_[i] + k3v_[i]) + k4v_[i]);
    chain_.node_z[i + 1] = z_[i];
    finite = finite && std::isfinite(z_[i]) && std::isfinite(z_dot_[i]);
  }
  if (!finite)
    throw NumericalError("dynamics step produced a non-finite state; reduce dt");
}

void ChainDynamics::set_positions(std::span<const double> cafe_x,
                                  const CableSystemConfig& config) {
  const int n = chain_.cafe_count();
  for (int i = 0; i < n; ++i) chain_.node_x[i + 1] = cafe_x[i];
  for (int s = 0; s < chain_.segment_count(); ++s) {
    const double rest = chain_.node_x[s + 1] - chain_.node_x[s];
    if (rest <= 1e-9)
      throw DegenerateGeometryError("set_positions: chain nodes coincide or reorder");
    chain_.rest_length[s] = rest;
    chain_.stiffness[s] = config.segment_stiffness(rest);
  }
}

void ChainDynamics::set_state(std::span<const double> z, std::span<const double> z_dot) {
  const int n = chain_.cafe_count();
  for (int i = 0; i < n; ++i) {
    z_[i] = z[i];
    z_dot_[i] = z_dot[i];
    chain_.node_z[i + 1] = z[i];
  }
}

void ChainDynamics::set_damping(std::span<const double> damping) {
  std::copy(damping.begin(), damping.end(), damping_.begin());
}

void ChainDynamics::use_pseudo_mass(double mass_floor) {
  for (double& m : mass_) m = std::max(m, mass_floor);
}

SegmentForces ChainDynamics::forces() const { return assemble_forces(chain_); }

void ChainDynamics::tensions(std::span<double> out) const {
  for (int s = 0; s < chain_.segment_count(); ++s) out[s] = tension_magnitude(chain_, s);
}

void ChainDynamics::horizontal_residuals(std::span<double> out) const {
  const int n = chain_.cafe_count();
  for (int i = 0; i < n; ++i) {
    const Side l = left_side(chain_, z_, i);
    const Side r = right_side(chain_, z_, i);
    out[i] = std::abs(l.tension * l.cos_theta - r.tension * r.cos_theta);
  }
}

double ChainDynamics::max_abs_z_dot() const {
  double worst = 0.0;
  for (const double v : z_dot_) worst = std::max(worst, std::abs(v));
  return worst;
}

double ChainDynamics::max_static_residual() const {
  const int n = chain_.cafe_count();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Side l = left_side(chain_, z_, i);
    const Side r = right_side(chain_, z_, i);
    const double f = l.tension * l.sin_theta + r.tension * r.sin_theta - weight_[i];
    worst = std::max(worst, std::abs(f));
  }
  return worst;
}

double ChainDynamics::stiffness_bound(int i) const {
  // Tangent vertical stiffness bound per side: elastic term is at most
  // k_seg, the geometric term tension / length.
  const Side l = left_side(chain_, z_, i);
  const Side r = right_side(chain_, z_, i);
  return chain_.stiffness[i] + l.tension / l.length + chain_.stiffness[i + 1] +
         r.tension / r.length;
}

SegmentForces step_dynamics(const CableChain& chain, std::vector<CafeState>& states,
                            double dt, Exec mode) {
  ChainDynamics dyn(chain, states, units::kGravity, mode);
  dyn.step(dt);
  for (int i = 0; i < dyn.chain().cafe_count(); ++i) {
    auto& state = states[index_of_cafe(states, dyn.chain().cafe_ids[i])];
    state.z = dyn.z()[i];
    state.z_dot = dyn.z_dot()[i];
  }
  return dyn.forces();
}

EquilibriumResult solve_equilibrium(const CableChain& chain, std::span<const CafeState> cafes,
                                    const EquilibriumOptions& options) {
  const int n = chain.cafe_count();
  if (n == 0) {
    EquilibriumResult trivial;
    trivial.forces = assemble_forces(chain);
    return trivial;
  }

  ChainDynamics dyn(chain, cafes, options.gravity, options.mode);
  // Massless test particles still relax; the static residual below uses the
  // true weight, so the rest point is unchanged.
  dyn.use_pseudo_mass(0.1);
  std::vector<double> z(dyn.z().begin(), dyn.z().end());
  std::vector<double> v(n, 0.0);
  dyn.set_state(z, v);

  std::vector<double> critical(n);
  long iterations = 0;
  double residual = dyn.max_static_residual();
  double dt = options.forced_dt;

  constexpr long kRetuneInterval = 1024;
  constexpr long kCheckInterval = 64;

  try {
    while (iterations < options.max_iterations) {
      if (iterations % kRetuneInterval == 0) {
        double omega_max = 0.0;
        for (int i = 0; i < n; ++i) {
          const double omega = std::sqrt(dyn.stiffness_bound(i) / dyn.mass(i));
          critical[i] = 2.0 * dyn.mass(i) * omega;
          omega_max = std::max(omega_max, omega);
        }
        dyn.set_damping(critical);
        if (options.forced_dt <= 0.0) dt = 0.5 / omega_max;
      }
      dyn.step(dt);
      ++iterations;
      if (iterations % kCheckInterval == 0) {
        residual = dyn.max_static_residual();
        if (dyn.max_abs_z_dot() < options.velocity_tolerance &&
            residual < options.force_tolerance)
          break;
      }
    }
  } catch (const NumericalError&) {
    std::ostringstream os;
    os << "equilibrium relaxation diverged (dt=" << dt << ")";
    throw ConvergenceError(os.str(), residual);
  }

  residual = dyn.max_static_residual();
  if (!(dyn.max_abs_z_dot() < options.velocity_tolerance &&
        residual < options.force_tolerance)) {
    std::ostringstream os;
    os << "equilibrium did not converge in " << iterations
       << " iterations; residual " << residual << " N";
    throw ConvergenceError(os.str(), residual);
  }

  EquilibriumResult result;
  result.z.assign(dyn.z().begin(), dyn.z().end());
  result.forces = dyn.forces();
  result.max_residual = residual;
  result.iterations = iterations;
  return result;
}

ScenarioEquilibrium solve_scenario_equilibrium(const CableSystemConfig& config,
                                               std::span<const CafeState> cafes,
                                               const EquilibriumOptions& options) {
  ScenarioEquilibrium out;
  out.z.assign(cafes.size(), 0.0);
  out.horizontal_residual.assign(cafes.size(), 0.0);

  const auto chains = build_chains(config, cafes);
  for (const auto& chain : chains) {
    const auto result = solve_equilibrium(chain, cafes, options);
    for (int i = 0; i < chain.cafe_count(); ++i) {
      const std::size_t at = index_of_cafe(cafes, chain.cafe_ids[i]);
      out.z[at] = result.z[i];
      out.horizontal_residual[at] = result.forces.horizontal_residual[i];
    }
    out.segment_tension.insert(out.segment_tension.end(), result.forces.tension.begin(),
                               result.forces.tension.end());
    out.max_residual = std::max(out.max_residual, result.max_residual);
    out.iterations += result.iterations;
  }
  return out;
}

std::vector<double> sag_compensation(std::span<const double> equilibrium_z) {
  std::vector<double> comp(equilibrium_z.size());
  for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = -equilibrium_z[i];
  return comp;
}

}  // namespace cafesim
