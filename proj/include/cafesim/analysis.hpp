#pragma once

#include <iosfwd>
#include <vector>

#include "cafesim/dynamics.hpp"
#include "cafesim/model.hpp"
#include "cafesim/parallel.hpp"

namespace cafesim {

enum class Placement { Evenly, Clustered };

/// Grid specification for a scalability sweep. "Evenly" places robots at
/// x = j * span / (n + 1); "Clustered" packs them around cluster_position
/// with cluster_spacing between neighbors. Pretensions are per cable.
struct SweepSpec {
  std::vector<double> span_lengths;  // m
  std::vector<int> robot_counts;
  std::vector<double> pretensions;   // N per cable
  double robot_mass = 1.4;           // kg
  Placement placement = Placement::Evenly;
  double cluster_position = 0.0;     // m, used when Clustered
  double cluster_spacing = 0.1;      // m between clustered robots
};

struct SweepCell {
  double span = 0.0;        // m
  int count = 0;
  double pretension = 0.0;  // N per cable
  double max_sag = 0.0;     // m, max |z*| over robots
  double max_tension = 0.0; // N per cable, max over segments
  bool converged = false;
};

/// Result grid, span-major then count then pretension. Non-converged cells
/// keep converged = false and are never interpolated over.
struct SweepResult {
  std::vector<double> spans;
  std::vector<int> counts;
  std::vector<double> pretensions;
  std::vector<SweepCell> cells;

  const SweepCell& at(std::size_t span_i, std::size_t count_i, std::size_t pre_i) const;
  std::size_t cell_count() const { return cells.size(); }
};

/// Places `count` robots of `mass` on a span per the placement rule.
std::vector<CafeState> place_robots(const SweepSpec& spec, double span, int count);

/// Runs the equilibrium solve over the whole grid. Cells are independent;
/// the Parallel path evaluates them across threads and assembles results in
/// grid order, so the output is identical to Serial.
SweepResult run_sweep(const SweepSpec& spec, const CableSystemConfig& base,
                      Exec mode = Exec::Parallel);

/// CSV export: span_m,count,pretension_N,max_sag_m,max_tension_N,converged
void write_sweep_csv(const SweepResult& result, std::ostream& out);

struct SizingOptions {
  double min_pretension = units::kGravity;  // N per cable (1 kgf)
  double tension_cap = 5000.0;              // N per cable
  int max_bisections = 80;
};

/// Smallest tested per-cable pretension whose equilibrium max sag meets the
/// budget, found by bisection until sag lands in [0.95, 1.0] * budget (or
/// the budget is not binding at min_pretension). Throws InfeasibleError
/// carrying the cap when even the cap cannot meet the budget.
double size_pretension(double span, int count, double mass, double sag_budget,
                       const CableSystemConfig& base, const SweepSpec& placement = {},
                       const SizingOptions& options = {});

}  // namespace cafesim
