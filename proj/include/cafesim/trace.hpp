#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cafesim/model.hpp"

namespace cafesim {

/// Fixed-step time series of a simulation: per-CAFE kinematics and clamp
/// state, per-segment tensions (aggregated across cables, left to right),
/// drive speed. Row count is duration/dt + 1, time strictly increasing at
/// constant step.
struct SimTrace {
  double dt = 0.0;
  int cafe_count = 0;
  int segment_count = 0;

  std::vector<double> time;         // per row
  std::vector<double> drive_speed;  // per row
  std::vector<double> x;            // row-major [row * cafe_count + i]
  std::vector<double> z;
  std::vector<double> z_dot;
  std::vector<ClampState> clamp;    // row-major
  std::vector<std::uint8_t> slip;   // row-major, 1 = hold capacity exceeded
  std::vector<double> tension;      // row-major [row * segment_count + s]

  std::size_t row_count() const { return time.size(); }
  void reserve_rows(std::size_t rows);
};

/// CSV with a fixed header and column order; floating point printed with
/// 9 significant digits so identical runs diff byte-identical.
void write_trace_csv(const SimTrace& trace, std::ostream& out);

}  // namespace cafesim
