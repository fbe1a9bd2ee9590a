// Test-only brute-force oracles, kept independent of the library's force
// assembly and relaxation solver: energy is recomputed here from chain
// geometry, and the minimizer is plain coordinate descent on a fixed grid.
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "cafesim/chain.hpp"

namespace oracle {

// Elastic-plus-pretension potential of one segment of current length L:
//   V(L) = T_pre * L + k/2 * max(0, L - L_rest)^2
// Its derivative is the tension law with the slack clamp and the
// pretension floor, so this is the conserved potential of the model.
inline double segment_potential(double length, double rest, double stiffness,
                                double pretension) {
  const double elongation = std::max(0.0, length - rest);
  return pretension * length + 0.5 * stiffness * elongation * elongation;
}

inline double segment_length(const cafesim::CableChain& chain, std::span<const double> z,
                             int segment) {
  const int n = chain.cafe_count();
  const double za = segment == 0 ? 0.0 : z[segment - 1];
  const double zb = segment == n ? 0.0 : z[segment];
  const double dx = chain.node_x[segment + 1] - chain.node_x[segment];
  const double dz = zb - za;
  return std::sqrt(dx * dx + dz * dz);
}

// Total energy for a displacement/velocity state; masses in chain order.
inline double total_energy(const cafesim::CableChain& chain, std::span<const double> z,
                           std::span<const double> z_dot, std::span<const double> mass,
                           double gravity) {
  double energy = 0.0;
  for (int i = 0; i < chain.cafe_count(); ++i)
    energy += 0.5 * mass[i] * z_dot[i] * z_dot[i] + mass[i] * gravity * z[i];
  for (int s = 0; s < chain.segment_count(); ++s)
    energy += segment_potential(segment_length(chain, z, s), chain.rest_length[s],
                                chain.stiffness[s], chain.pretension);
  return energy;
}

// Energy terms that depend on node i alone: its gravity term plus its two
// adjacent segments. Comparing these locally avoids cancellation against
// the large pretension baseline.
inline double local_energy(const cafesim::CableChain& chain, std::span<const double> z,
                           std::span<const double> mass, double gravity, int i,
                           double zi) {
  const int n = chain.cafe_count();
  const double zl = i == 0 ? 0.0 : z[i - 1];
  const double zr = i == n - 1 ? 0.0 : z[i + 1];
  const double dxl = chain.node_x[i + 1] - chain.node_x[i];
  const double dxr = chain.node_x[i + 2] - chain.node_x[i + 1];
  const double ll = std::sqrt(dxl * dxl + (zi - zl) * (zi - zl));
  const double lr = std::sqrt(dxr * dxr + (zr - zi) * (zr - zi));
  return mass[i] * gravity * zi +
         segment_potential(ll, chain.rest_length[i], chain.stiffness[i], chain.pretension) +
         segment_potential(lr, chain.rest_length[i + 1], chain.stiffness[i + 1],
                           chain.pretension);
}

// Total-potential-energy minimization by coordinate descent over z on a
// fixed grid. The potential is convex, so the walk cannot get trapped;
// the result is within one grid cell per coordinate of the true minimum.
inline std::vector<double> minimize_energy(const cafesim::CableChain& chain,
                                           std::span<const double> mass, double gravity,
                                           double grid = 1e-5, int max_rounds = 400) {
  const int n = chain.cafe_count();
  std::vector<double> z(n, 0.0);
  for (int round = 0; round < max_rounds; ++round) {
    bool moved = false;
    for (int i = 0; i < n; ++i) {
      double best = local_energy(chain, z, mass, gravity, i, z[i]);
      while (true) {
        const double down = local_energy(chain, z, mass, gravity, i, z[i] - grid);
        if (down < best) {
          z[i] -= grid;
          best = down;
          moved = true;
          continue;
        }
        const double up = local_energy(chain, z, mass, gravity, i, z[i] + grid);
        if (up < best) {
          z[i] += grid;
          best = up;
          moved = true;
          continue;
        }
        break;
      }
    }
    if (!moved) break;
  }
  return z;
}

}  // namespace oracle
