// Compares the serial reference kernels against their OpenMP variants:
// per-node force assembly on a long chain, equilibrium sweep cells, and a
// batch of seeded simulations. Verifies bitwise agreement while timing.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "cafesim/analysis.hpp"
#include "cafesim/chain.hpp"
#include "cafesim/config.hpp"
#include "cafesim/dynamics.hpp"
#include "cafesim/kinematics.hpp"
#include "cafesim/parallel.hpp"
#include "cafesim/sim.hpp"
#include "cafesim/units.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
  std::printf("%-26s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n", name,
              serial_s, parallel_s, serial_s / parallel_s,
              identical ? "results identical" : "RESULTS DIFFER");
}

bool bench_accelerations() {
  constexpr int kNodes = 20000;
  constexpr int kRepeats = 2000;

  cafesim::CableSystemConfig config;
  config.span_length = 1000.0;
  config.stiffness = 18148.5;
  config.pretension = cafesim::units::kgf_to_newton(60.0);
  config.load_bearing_cables = 6;
  config.roller_radius = 0.015;
  config.roller_omega = 7.0;

  std::vector<cafesim::CafeState> cafes(kNodes);
  for (int i = 0; i < kNodes; ++i) {
    cafes[i].id = i;
    cafes[i].mass = 1.4;
    cafes[i].damping = 5.0;
    cafes[i].x = config.span_length * (i + 1) / (kNodes + 1);
    cafes[i].z = -1e-3 * ((i * 37) % 50);
  }
  const auto chain = cafesim::build_chain(config, cafes);

  std::vector<double> z(kNodes), z_dot(kNodes, 0.0), mass(kNodes, 1.4), damp(kNodes, 5.0);
  for (int i = 0; i < kNodes; ++i) z[i] = chain.node_z[i + 1];
  std::vector<double> out_serial(kNodes), out_parallel(kNodes);

  auto t0 = Clock::now();
  for (int r = 0; r < kRepeats; ++r)
    cafesim::chain_accelerations(chain, z, z_dot, mass, damp, cafesim::units::kGravity,
                                 out_serial, cafesim::Exec::Serial);
  const double serial_s = seconds_since(t0);

  t0 = Clock::now();
  for (int r = 0; r < kRepeats; ++r)
    cafesim::chain_accelerations(chain, z, z_dot, mass, damp, cafesim::units::kGravity,
                                 out_parallel, cafesim::Exec::Parallel);
  const double parallel_s = seconds_since(t0);

  const bool identical = std::memcmp(out_serial.data(), out_parallel.data(),
                                     sizeof(double) * kNodes) == 0;
  report("force assembly", serial_s, parallel_s, identical);
  return identical;
}

bool bench_sweep() {
  cafesim::SweepSpec spec;
  for (double span = 2.0; span <= 20.0; span += 2.0) spec.span_lengths.push_back(span);
  for (int count = 1; count <= 6; ++count) spec.robot_counts.push_back(count);
  for (double kgf = 20.0; kgf <= 200.0; kgf += 20.0)
    spec.pretensions.push_back(cafesim::units::kgf_to_newton(kgf));

  const auto base = cafesim::default_paper_scenario().system;

  auto t0 = Clock::now();
  const auto serial = cafesim::run_sweep(spec, base, cafesim::Exec::Serial);
  const double serial_s = seconds_since(t0);

  t0 = Clock::now();
  const auto parallel = cafesim::run_sweep(spec, base, cafesim::Exec::Parallel);
  const double parallel_s = seconds_since(t0);

  bool identical = serial.cells.size() == parallel.cells.size();
  for (std::size_t i = 0; identical && i < serial.cells.size(); ++i)
    identical = serial.cells[i].max_sag == parallel.cells[i].max_sag &&
                serial.cells[i].max_tension == parallel.cells[i].max_tension &&
                serial.cells[i].converged == parallel.cells[i].converged;
  report("equilibrium sweep", serial_s, parallel_s, identical);
  return identical;
}

bool bench_seeded_batch() {
  constexpr int kRuns = 200;

  auto scenario = cafesim::default_paper_scenario();
  const auto drive = cafesim::drive_from(scenario.system);
  auto plan = cafesim::MotionPlan(scenario.cafes.size());
  plan.add_segment(0, cafesim::plan_move(scenario.cafes[0], 0.5, +1, drive,
                                         scenario.system, 0.3),
                   scenario.clamping.transition_duration);
  scenario.timeline = plan.to_timeline(scenario.clamping);

  cafesim::SimOptions options;
  options.record_trace = false;

  auto t0 = Clock::now();
  const auto serial =
      cafesim::run_seeded_batch(scenario, options, 1, kRuns, cafesim::Exec::Serial);
  const double serial_s = seconds_since(t0);

  t0 = Clock::now();
  const auto parallel =
      cafesim::run_seeded_batch(scenario, options, 1, kRuns, cafesim::Exec::Parallel);
  const double parallel_s = seconds_since(t0);

  bool identical = serial.size() == parallel.size();
  for (std::size_t i = 0; identical && i < serial.size(); ++i)
    identical = serial[i].final_x == parallel[i].final_x &&
                serial[i].max_abs_sag == parallel[i].max_abs_sag;
  report("seeded batch (200 runs)", serial_s, parallel_s, identical);
  return identical;
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", omp_get_max_threads());
  bool ok = bench_accelerations();
  ok = bench_sweep() && ok;
  ok = bench_seeded_batch() && ok;
  return ok ? 0 : 1;
}
