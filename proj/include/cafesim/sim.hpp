#pragma once

#include <cstdint>
#include <vector>

#include "cafesim/model.hpp"
#include "cafesim/parallel.hpp"
#include "cafesim/trace.hpp"

namespace cafesim {

struct SimOptions {
  double dt = 1e-3;      // s
  double duration = 0.0; // s; 0 = timeline end + switch latency + 2 s ring-down
  bool noise = false;
  std::uint64_t seed = 0;
  double noise_drift_sigma = 0.008;  // m error per m of drive travel (1 sigma)
  double noise_event_sigma = 0.001;  // m per clamp event (1 sigma)
  bool record_trace = true;
  bool settle_first = true;  // start from static equilibrium sag
};

struct SimSummary {
  std::vector<double> final_x;  // per CAFE
  std::vector<double> final_z;
  double max_abs_sag = 0.0;    // m over CAFEs and time
  double max_abs_z_dot = 0.0;  // m/s
  long slip_events = 0;        // rows where capacity < required, summed over CAFEs
  /// Max |separation(t) - separation(0)| over CAFE pairs with identical
  /// command lists; 0 when no such pair exists.
  double cooperative_drift = 0.0;
  /// Same measure over all CAFE pairs regardless of their timelines.
  double max_pair_drift = 0.0;
  double duration = 0.0;
  std::uint64_t steps = 0;
};

struct SimResult {
  SimTrace trace;  // empty when record_trace is off
  SimSummary summary;
};

/// Runs one scenario deterministically: commands latch at the first step
/// boundary at or after their command time, switches hold the platform for
/// transition_duration, settled Left/Right states couple it to the moving
/// drive surface, and the vertical spring-mass state advances by RK4 within
/// each step while x is held. Identical inputs and seed give byte-identical
/// traces. Throws on invalid scenarios and on numerical instability (the
/// failing time is named).
SimResult simulate(const Scenario& scenario, const SimOptions& options = {});

/// Independent seeded runs of one scenario (noise forced on), returning
/// each run's summary in seed order. Scenarios are independent, so the
/// Parallel path is identical to Serial.
std::vector<SimSummary> run_seeded_batch(const Scenario& scenario, const SimOptions& base,
                                         std::uint64_t first_seed, int runs,
                                         Exec mode = Exec::Parallel);

}  // namespace cafesim
