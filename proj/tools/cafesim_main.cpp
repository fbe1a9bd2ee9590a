#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cafesim/analysis.hpp"
#include "cafesim/config.hpp"
#include "cafesim/dynamics.hpp"
#include "cafesim/error.hpp"
#include "cafesim/sim.hpp"
#include "cafesim/trace.hpp"
#include "cafesim/units.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

void print_number(const char* label, double value, const char* unit) {
  std::printf("%-28s %.9g %s\n", label, value, unit);
}

int cmd_simulate(const std::string& config_path, const std::string& out_path, double dt,
                 double duration, bool noise, std::uint64_t seed) {
  const auto scenario = cafesim::load_scenario_file(config_path);

  cafesim::SimOptions options;
  options.dt = dt;
  options.duration = duration;
  options.noise = noise;
  options.seed = seed;
  options.record_trace = !out_path.empty();

  const auto result = cafesim::simulate(scenario, options);

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw cafesim::IoError("cannot write " + out_path);
    cafesim::write_trace_csv(result.trace, out);
    if (!out) throw cafesim::IoError("write failed for " + out_path);
  }

  const auto& s = result.summary;
  std::printf("simulated %.9g s in %llu steps (dt %.9g s)\n", s.duration,
              static_cast<unsigned long long>(s.steps), options.dt);
  for (std::size_t i = 0; i < s.final_x.size(); ++i)
    std::printf("cafe %zu: final x %.9g m, final z %.9g m\n", i, s.final_x[i],
                s.final_z[i]);
  print_number("max |sag|", s.max_abs_sag, "m");
  print_number("max |z_dot|", s.max_abs_z_dot, "m/s");
  std::printf("%-28s %ld\n", "slip events", s.slip_events);
  print_number("cooperative drift", s.cooperative_drift, "m");
  print_number("max pair drift", s.max_pair_drift, "m");
  if (!out_path.empty()) std::printf("trace written to %s\n", out_path.c_str());
  return kExitOk;
}

int cmd_equilibrium(const std::string& config_path) {
  const auto scenario = cafesim::load_scenario_file(config_path);
  if (scenario.cafes.empty()) {
    std::printf("no platforms configured; cable stays at the anchor line\n");
    return kExitOk;
  }

  const auto eq = cafesim::solve_scenario_equilibrium(scenario.system, scenario.cafes);
  const auto comp = cafesim::sag_compensation(eq.z);
  for (std::size_t i = 0; i < eq.z.size(); ++i)
    std::printf("cafe %zu: sag %.9g mm, compensation %+.9g mm, horizontal residual %.3g N\n",
                i, -eq.z[i] * 1e3, comp[i] * 1e3, eq.horizontal_residual[i]);
  for (std::size_t s = 0; s < eq.segment_tension.size(); ++s)
    std::printf("segment %zu: tension %.9g N total, %.9g N per cable\n", s,
                eq.segment_tension[s],
                eq.segment_tension[s] / scenario.system.load_bearing_cables);
  print_number("max static residual", eq.max_residual, "N");
  std::printf("%-28s %ld\n", "relaxation iterations", eq.iterations);
  return kExitOk;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_path,
              const std::string& base_config_path) {
  const auto spec = cafesim::load_sweep_spec_file(spec_path);
  cafesim::CableSystemConfig base = cafesim::default_paper_scenario().system;
  if (!base_config_path.empty())
    base = cafesim::load_scenario_file(base_config_path).system;

  const auto result = cafesim::run_sweep(spec, base);

  std::ofstream out(out_path);
  if (!out) throw cafesim::IoError("cannot write " + out_path);
  cafesim::write_sweep_csv(result, out);
  if (!out) throw cafesim::IoError("write failed for " + out_path);

  std::size_t converged = 0;
  for (const auto& cell : result.cells) converged += cell.converged ? 1 : 0;
  std::printf("%zu cells (%zu converged) written to %s\n", result.cells.size(), converged,
              out_path.c_str());
  return converged == result.cells.size() ? kExitOk : kExitNumerical;
}

int cmd_validate(const std::string& config_path) {
  const auto scenario = cafesim::parse_scenario_file(config_path);
  const auto violations = cafesim::validate(scenario);
  if (violations.empty()) {
    std::printf("%s: valid\n", config_path.c_str());
    return kExitOk;
  }
  for (const auto& v : violations)
    std::fprintf(stderr, "%s: %s\n", v.key.c_str(), v.message.c_str());
  return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cable-traversal multi-robot simulator and analysis toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path, spec_path, base_config_path;
  double dt = 1e-3;
  double duration = 0.0;
  bool noise = false;
  std::uint64_t seed = 0;

  auto* sim = app.add_subcommand("simulate", "run a scenario and write a CSV trace");
  sim->add_option("--config", config_path, "scenario JSON")->required();
  sim->add_option("--out", out_path, "trace CSV path (omit for summary only)");
  sim->add_option("--dt", dt, "step size in seconds")->check(CLI::PositiveNumber);
  sim->add_option("--duration", duration, "simulated seconds (default: timeline end)");
  sim->add_flag("--noise", noise, "enable seeded drive-noise injection");
  sim->add_option("--seed", seed, "noise seed");

  auto* eq = app.add_subcommand("equilibrium", "static sag and tension report");
  eq->add_option("--config", config_path, "scenario JSON")->required();

  auto* sweep = app.add_subcommand("sweep", "scalability grid to CSV");
  sweep->add_option("--spec", spec_path, "sweep grid JSON")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();
  sweep->add_option("--config", base_config_path, "base scenario JSON (defaults built in)");

  auto* validate = app.add_subcommand("validate", "schema and invariant checks only");
  validate->add_option("--config", config_path, "scenario JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(config_path, out_path, dt, duration, noise, seed);
    if (eq->parsed()) return cmd_equilibrium(config_path);
    if (sweep->parsed()) return cmd_sweep(spec_path, out_path, base_config_path);
    if (validate->parsed()) return cmd_validate(config_path);
  } catch (const cafesim::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitValidation;
  } catch (const cafesim::ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return kExitValidation;
  } catch (const cafesim::ConvergenceError& e) {
    std::fprintf(stderr, "numerical error: %s (residual %.3g N)\n", e.what(), e.residual);
    return kExitNumerical;
  } catch (const cafesim::NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kExitNumerical;
  } catch (const cafesim::OutOfRangeError& e) {
    std::fprintf(stderr, "range error: %s\n", e.what());
    return kExitNumerical;
  } catch (const cafesim::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitIo;
  } catch (const cafesim::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return kExitOk;
}
