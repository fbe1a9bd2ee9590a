#include "cafesim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <tuple>

#include "cafesim/chain.hpp"
#include "cafesim/error.hpp"

namespace cafesim {

const SweepCell& SweepResult::at(std::size_t span_i, std::size_t count_i,
                                 std::size_t pre_i) const {
  return cells.at((span_i * counts.size() + count_i) * pretensions.size() + pre_i);
}

std::vector<CafeState> place_robots(const SweepSpec& spec, double span, int count) {
  std::vector<CafeState> robots(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    auto& r = robots[static_cast<std::size_t>(j)];
    r.id = j;
    r.mass = spec.robot_mass;
    if (spec.placement == Placement::Evenly) {
      r.x = span * (j + 1) / (count + 1);
    } else {
      // Pack around the cluster position, kept off the anchors.
      const double width = spec.cluster_spacing * (count - 1);
      const double margin = std::min(0.05 * span, spec.cluster_spacing);
      double start = spec.cluster_position - width / 2.0;
      start = std::clamp(start, margin, std::max(margin, span - margin - width));
      r.x = start + spec.cluster_spacing * j;
    }
  }
  return robots;
}

namespace {

SweepCell evaluate_cell(const SweepSpec& spec, const CableSystemConfig& base, double span,
                        int count, double pretension) {
  SweepCell cell{span, count, pretension, 0.0, 0.0, false};
  CableSystemConfig config = base;
  config.span_length = span;
  config.pretension = pretension;

  const auto robots = place_robots(spec, span, count);
  try {
    const auto eq = solve_scenario_equilibrium(config, robots);
    for (const double z : eq.z) cell.max_sag = std::max(cell.max_sag, std::abs(z));
    for (const double t : eq.segment_tension)
      cell.max_tension = std::max(cell.max_tension, t / config.load_bearing_cables);
    cell.converged = true;
  } catch (const NumericalError&) {
    cell.converged = false;  // flagged, never interpolated
  }
  return cell;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, const CableSystemConfig& base, Exec mode) {
  if (spec.span_lengths.empty() || spec.robot_counts.empty() || spec.pretensions.empty())
    throw ArgumentError("run_sweep: every grid axis needs at least one value");
  for (const double s : spec.span_lengths)
    if (!(s > 0.0)) throw ArgumentError("run_sweep: span lengths must be > 0");
  for (const int c : spec.robot_counts)
    if (c < 1) throw ArgumentError("run_sweep: robot counts must be >= 1");
  for (const double p : spec.pretensions)
    if (!(p > 0.0)) throw ArgumentError("run_sweep: pretensions must be > 0");
  if (!(spec.robot_mass > 0.0)) throw ArgumentError("run_sweep: robot mass must be > 0");

  SweepResult result;
  result.spans = spec.span_lengths;
  result.counts = spec.robot_counts;
  result.pretensions = spec.pretensions;

  const std::size_t total =
      result.spans.size() * result.counts.size() * result.pretensions.size();
  result.cells.resize(total);

  const auto cell_inputs = [&](std::size_t flat) {
    const std::size_t pre_i = flat % result.pretensions.size();
    const std::size_t count_i = (flat / result.pretensions.size()) % result.counts.size();
    const std::size_t span_i = flat / (result.pretensions.size() * result.counts.size());
    return std::tuple{result.spans[span_i], result.counts[count_i],
                      result.pretensions[pre_i]};
  };

  // Cells are independent; results land at their grid index, so thread
  // order never changes the output.
  if (mode == Exec::Parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
    for (long flat = 0; flat < static_cast<long>(total); ++flat) {
      const auto [span, count, pre] = cell_inputs(static_cast<std::size_t>(flat));
      result.cells[static_cast<std::size_t>(flat)] =
          evaluate_cell(spec, base, span, count, pre);
    }
    return result;
#endif
  }
  for (std::size_t flat = 0; flat < total; ++flat) {
    const auto [span, count, pre] = cell_inputs(flat);
    result.cells[flat] = evaluate_cell(spec, base, span, count, pre);
  }
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "span_m,count,pretension_N,max_sag_m,max_tension_N,converged\n";
  char line[192];
  for (const auto& cell : result.cells) {
    std::snprintf(line, sizeof line, "%.9g,%d,%.9g,%.9g,%.9g,%d\n", cell.span, cell.count,
                  cell.pretension, cell.max_sag, cell.max_tension, cell.converged ? 1 : 0);
    out << line;
  }
}

double size_pretension(double span, int count, double mass, double sag_budget,
                       const CableSystemConfig& base, const SweepSpec& placement,
                       const SizingOptions& options) {
  if (!(sag_budget > 0.0)) throw ArgumentError("size_pretension: budget must be > 0");

  SweepSpec spec = placement;
  spec.robot_mass = mass;

  const auto max_sag_at = [&](double pretension) {
    CableSystemConfig config = base;
    config.span_length = span;
    config.pretension = pretension;
    const auto robots = place_robots(spec, span, count);
    const auto eq = solve_scenario_equilibrium(config, robots);
    double sag = 0.0;
    for (const double z : eq.z) sag = std::max(sag, std::abs(z));
    return sag;
  };

  // Budget not binding at the smallest allowed pretension.
  if (max_sag_at(options.min_pretension) <= sag_budget) return options.min_pretension;

  if (max_sag_at(options.tension_cap) > sag_budget) {
    std::ostringstream os;
    os << "sag budget " << sag_budget << " m unreachable for span " << span << " m, "
       << count << " robots under the " << options.tension_cap << " N per-cable cap";
    throw InfeasibleError(os.str(), options.tension_cap);
  }

  // Sag decreases monotonically with pretension; bisect until the budget is
  // met tightly (within [0.95, 1.0] * budget) and return the smallest
  // tested pretension that met it.
  double lo = options.min_pretension;  // sag > budget
  double hi = options.tension_cap;     // sag <= budget
  for (int i = 0; i < options.max_bisections; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double sag = max_sag_at(mid);
    if (sag <= sag_budget) {
      hi = mid;
      if (sag >= 0.95 * sag_budget) break;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace cafesim
