#pragma once

#include <span>
#include <vector>

#include "cafesim/model.hpp"

namespace cafesim {

/// One elastic chain: fixed anchors at both ends (z = 0), CAFE point masses
/// at the interior nodes, massless spring segments between consecutive
/// nodes. Multiple load-bearing cables are aggregated into one effective
/// chain (pretension and stiffness scaled by the cable count).
///
/// Rest lengths are the straight chords at z = 0 for the current along-span
/// positions: a platform slides along the cable, so moving it does not
/// stretch the cable; sag elongation alone loads the elastic term.
struct CableChain {
  std::vector<double> node_x;       // size n+2, strictly increasing
  std::vector<double> node_z;       // size n+2, anchors fixed at 0
  std::vector<double> rest_length;  // per segment, size n+1
  std::vector<double> stiffness;    // per segment, aggregated, size n+1
  double pretension = 0.0;          // aggregated floor, N
  std::vector<int> cafe_ids;        // interior node -> CAFE id, size n

  int cafe_count() const { return static_cast<int>(node_x.size()) - 2; }
  int segment_count() const { return static_cast<int>(node_x.size()) - 1; }
};

/// Builds the aggregated chain for one span. CAFEs may be given in any
/// order; they are sorted by x. Throws DegenerateGeometryError when two
/// nodes coincide along the span (tolerance 1e-9 m).
CableChain build_chain(const CableSystemConfig& config, std::span<const CafeState> cafes);

/// Builds one chain per sub-span when intermediate anchors are configured
/// (anchor_spacing > 0 pins z = 0 every anchor_spacing meters, decoupling
/// neighbors). An interior anchor within 1e-9 m of a CAFE is skipped for
/// that build. Chains are ordered left to right; without intermediate
/// anchors the result is a single chain.
std::vector<CableChain> build_chains(const CableSystemConfig& config,
                                     std::span<const CafeState> cafes);

}  // namespace cafesim
