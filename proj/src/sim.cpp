#include "cafesim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "cafesim/chain.hpp"
#include "cafesim/clamping.hpp"
#include "cafesim/dynamics.hpp"
#include "cafesim/error.hpp"
#include "cafesim/kinematics.hpp"
#include "cafesim/noise.hpp"

namespace cafesim {

namespace {

// Chains plus integrators for the current topology. With intermediate
// anchors the assignment of platforms to sub-spans changes as they move, so
// the engine rebuilds every step; without anchors the single chain only
// needs its node positions refreshed.
struct DynamicsEngine {
  const CableSystemConfig& config;
  std::vector<CafeState>& work;  // indexed by cafe id, x/z/z_dot kept current
  std::vector<ChainDynamics> dynamics;
  int segment_total = 0;
  std::vector<double> position_buffer;

  DynamicsEngine(const CableSystemConfig& cfg, std::vector<CafeState>& cafes)
      : config(cfg), work(cafes), position_buffer(cafes.size()) {
    rebuild();
    segment_total = current_segment_total();
  }

  void rebuild() {
    dynamics.clear();
    for (auto& chain : build_chains(config, work))
      dynamics.emplace_back(std::move(chain), work);
  }

  int current_segment_total() const {
    int total = 0;
    for (const auto& dyn : dynamics) total += dyn.chain().segment_count();
    return total;
  }

  void sync_positions() {
    if (config.anchor_spacing > 0.0) {
      rebuild();
      if (current_segment_total() != segment_total)
        throw NumericalError(
            "a platform parked exactly on an intermediate anchor; the trace "
            "schema cannot represent the merged segment");
      return;
    }
    for (auto& dyn : dynamics) {
      const int count = dyn.chain().cafe_count();
      for (int i = 0; i < count; ++i)
        position_buffer[static_cast<std::size_t>(i)] =
            work[static_cast<std::size_t>(dyn.chain().cafe_ids[i])].x;
      dyn.set_positions({position_buffer.data(), static_cast<std::size_t>(count)}, config);
    }
  }

  void step(double dt) {
    for (auto& dyn : dynamics) dyn.step(dt);
    pull_state_into_work();
  }

  void pull_state_into_work() {
    for (const auto& dyn : dynamics)
      for (int i = 0; i < dyn.chain().cafe_count(); ++i) {
        auto& cafe = work[static_cast<std::size_t>(dyn.chain().cafe_ids[i])];
        cafe.z = dyn.z()[i];
        cafe.z_dot = dyn.z_dot()[i];
      }
  }
};

std::vector<std::vector<ClampCommand>> commands_by_cafe(const Scenario& scenario) {
  std::vector<std::vector<ClampCommand>> commands(scenario.cafes.size());
  for (std::size_t id = 0; id < scenario.timeline.commands.size() && id < commands.size();
       ++id)
    commands[id] = scenario.timeline.commands[id];
  return commands;
}

// Pairs of platforms driven by identical command lists; the shared drive
// preserves their separation exactly.
std::vector<std::pair<std::size_t, std::size_t>> cooperative_pairs(
    const std::vector<std::vector<ClampCommand>>& commands) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < commands.size(); ++i)
    for (std::size_t j = i + 1; j < commands.size(); ++j)
      if (commands[i] == commands[j]) pairs.emplace_back(i, j);
  return pairs;
}

[[noreturn]] void rethrow_at(const char* what, double t, const std::exception& e) {
  std::ostringstream os;
  os << what << " at t=" << t << " s: " << e.what();
  throw NumericalError(os.str());
}

}  // namespace

SimResult simulate(const Scenario& scenario, const SimOptions& options) {
  validate_or_throw(scenario);
  if (!(options.dt > 0.0)) throw ArgumentError("simulate: dt must be > 0");

  const double duration =
      options.duration > 0.0
          ? options.duration
          : scenario.timeline.end_time() + scenario.clamping.transition_duration + 2.0;
  const auto steps = static_cast<long long>(std::llround(duration / options.dt));
  if (steps < 0) throw ArgumentError("simulate: negative duration");

  const std::size_t n = scenario.cafes.size();
  const double dt = options.dt;
  const double eps = dt * 1e-9;
  const DriveState drive = drive_from(scenario.system);
  const double cos_incline = std::cos(scenario.system.incline_angle);
  const double sin_incline = std::sin(scenario.system.incline_angle);
  const double hold_capacity =
      hertz_force(scenario.clamping.max_deformation, scenario.clamping).hold_capacity;
  const DriveNoise noise(options.seed, options.noise_drift_sigma, options.noise_event_sigma);

  // Along-span position is kept as x0 + displacement: platforms that receive
  // identical command streams accumulate bitwise-identical displacements, so
  // their separation never drifts in the ideal model.
  std::vector<double> x0(n), disp(n, 0.0), z_nominal(n, 0.0);
  std::vector<ClampState> clamp(n);
  std::vector<std::size_t> next_command(n, 0);
  std::vector<CafeState> work = scenario.cafes;
  for (std::size_t i = 0; i < n; ++i) {
    x0[i] = scenario.cafes[i].x;
    clamp[i] = scenario.cafes[i].clamp;
  }

  if (options.settle_first && n > 0) {
    const auto eq = solve_scenario_equilibrium(scenario.system, work);
    for (std::size_t i = 0; i < n; ++i) {
      work[i].z = eq.z[i];
      work[i].z_dot = 0.0;
    }
  }

  DynamicsEngine engine(scenario.system, work);
  const auto commands = commands_by_cafe(scenario);
  const auto coop_pairs = cooperative_pairs(commands);
  std::vector<double> coop_sep0(coop_pairs.size());
  for (std::size_t p = 0; p < coop_pairs.size(); ++p)
    coop_sep0[p] = disp[coop_pairs[p].second] - disp[coop_pairs[p].first];

  SimResult result;
  SimTrace& trace = result.trace;
  trace.dt = dt;
  trace.cafe_count = static_cast<int>(n);
  trace.segment_count = engine.segment_total;
  if (options.record_trace) trace.reserve_rows(static_cast<std::size_t>(steps) + 1);

  SimSummary& summary = result.summary;
  summary.duration = static_cast<double>(steps) * dt;
  summary.steps = static_cast<std::uint64_t>(steps);

  std::vector<double> residual(n, 0.0);
  std::vector<double> force_scratch(static_cast<std::size_t>(engine.segment_total));
  double drive_travel = 0.0;  // cumulative displacement of the drive surface

  for (long long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;

    // Latch commands at the first step boundary at or after their time.
    for (std::size_t i = 0; i < n; ++i) {
      while (next_command[i] < commands[i].size() &&
             commands[i][next_command[i]].time <= t + eps) {
        const bool was_coupled = drive_coupled(clamp[i]);
        try {
          clamp[i] = step_clamp_state(clamp[i], commands[i][next_command[i]].state, dt,
                                      scenario.clamping);
        } catch (const CommandConflictError& e) {
          rethrow_at("command conflict", t, e);
        }
        ++next_command[i];
        if (options.noise && was_coupled && !drive_coupled(clamp[i])) {
          // Release jolt, keyed to the shared drive position.
          const int s = direction_sign(clamp[i].mode);
          const double off = s * noise.event_offset(drive_travel, s, false);
          disp[i] += off * cos_incline;
          z_nominal[i] += off * sin_incline;
        }
      }
    }

    // Row bookkeeping at time t.
    try {
      for (std::size_t i = 0; i < n; ++i) work[i].x = x0[i] + disp[i];
      engine.sync_positions();
    } catch (const NumericalError& e) {
      rethrow_at("trace schema violation", t, e);
    } catch (const Error& e) {
      rethrow_at("degenerate geometry", t, e);
    }

    for (std::size_t p = 0; p < coop_pairs.size(); ++p) {
      const double drift =
          std::abs((disp[coop_pairs[p].second] - disp[coop_pairs[p].first]) - coop_sep0[p]);
      summary.cooperative_drift = std::max(summary.cooperative_drift, drift);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        summary.max_pair_drift =
            std::max(summary.max_pair_drift, std::abs(disp[j] - disp[i]));
    for (std::size_t i = 0; i < n; ++i) {
      summary.max_abs_sag = std::max(summary.max_abs_sag, std::abs(work[i].z));
      summary.max_abs_z_dot = std::max(summary.max_abs_z_dot, std::abs(work[i].z_dot));
    }

    // Slip flags: while engaged, the clamp must resist the horizontal
    // tension imbalance. Slip is reported, never simulated as motion.
    for (auto& dyn : engine.dynamics) {
      const int count = dyn.chain().cafe_count();
      if (count == 0) continue;
      dyn.horizontal_residuals({force_scratch.data(), static_cast<std::size_t>(count)});
      for (int c = 0; c < count; ++c)
        residual[static_cast<std::size_t>(dyn.chain().cafe_ids[c])] =
            force_scratch[static_cast<std::size_t>(c)];
    }
    for (std::size_t i = 0; i < n; ++i) {
      const bool engaged = !clamp[i].transitioning;
      if (engaged && residual[i] > hold_capacity) ++summary.slip_events;
    }

    if (options.record_trace) {
      trace.time.push_back(t);
      trace.drive_speed.push_back(drive.running ? drive.surface_speed : 0.0);
      std::size_t seg_offset = 0;
      for (auto& dyn : engine.dynamics) {
        const auto count = static_cast<std::size_t>(dyn.chain().segment_count());
        dyn.tensions({force_scratch.data() + seg_offset, count});
        seg_offset += count;
      }
      for (const double tension : force_scratch) trace.tension.push_back(tension);
      for (std::size_t i = 0; i < n; ++i) {
        trace.x.push_back(work[i].x);
        trace.z.push_back(z_nominal[i] + work[i].z);
        trace.z_dot.push_back(work[i].z_dot);
        trace.clamp.push_back(clamp[i]);
        const bool engaged = !clamp[i].transitioning;
        trace.slip.push_back(engaged && residual[i] > hold_capacity ? 1 : 0);
      }
    }

    if (k == steps) break;

    // Integrate [t, t + dt): countdown switches, move coupled platforms,
    // then advance the vertical dynamics with x held at its new value.
    const double step_travel = drive.running ? drive.surface_speed * dt : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const ClampState before = clamp[i];
      clamp[i] = step_clamp_state(before, std::nullopt, dt, scenario.clamping);

      if (drive_coupled(before) && drive.running) {
        const int s = direction_sign(before.mode);
        double inc = s * step_travel;
        if (options.noise) inc += s * noise.drift_rate(drive_travel) * step_travel;
        disp[i] += inc * cos_incline;
        z_nominal[i] += inc * sin_incline;
        const double x_new = x0[i] + disp[i];
        if (x_new < 0.0 || x_new > scenario.system.span_length) {
          std::ostringstream os;
          os << "cafe " << i << " leaves the span at t=" << t + dt << " s (x=" << x_new
             << ")";
          throw OutOfRangeError(os.str());
        }
      }

      if (options.noise && !drive_coupled(before) && drive_coupled(clamp[i])) {
        // Coupling begins at the next boundary; the engagement jolt lands
        // there, keyed to the shared drive position.
        const int s = direction_sign(clamp[i].mode);
        const double off = s * noise.event_offset(drive_travel + step_travel, s, true);
        disp[i] += off * cos_incline;
        z_nominal[i] += off * sin_incline;
      }
    }

    try {
      for (std::size_t i = 0; i < n; ++i) work[i].x = x0[i] + disp[i];
      engine.sync_positions();
      engine.step(dt);
    } catch (const NumericalError& e) {
      rethrow_at("numerical instability", t + dt, e);
    } catch (const Error& e) {
      rethrow_at("degenerate geometry", t + dt, e);
    }
    drive_travel += step_travel;
  }

  summary.final_x.resize(n);
  summary.final_z.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    summary.final_x[i] = x0[i] + disp[i];
    summary.final_z[i] = z_nominal[i] + work[i].z;
  }
  return result;
}

std::vector<SimSummary> run_seeded_batch(const Scenario& scenario, const SimOptions& base,
                                         std::uint64_t first_seed, int runs, Exec mode) {
  if (runs < 0) throw ArgumentError("run_seeded_batch: runs must be >= 0");
  std::vector<SimSummary> out(static_cast<std::size_t>(runs));
  const auto run_one = [&](int r) {
    SimOptions options = base;
    options.noise = true;
    options.record_trace = false;
    options.seed = first_seed + static_cast<std::uint64_t>(r);
    out[static_cast<std::size_t>(r)] = simulate(scenario, options).summary;
  };
  if (mode == Exec::Parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < runs; ++r) run_one(r);
    return out;
#endif
  }
  for (int r = 0; r < runs; ++r) run_one(r);
  return out;
}

}  // namespace cafesim
