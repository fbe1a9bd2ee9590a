#include "cafesim/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cafesim/error.hpp"

namespace cafesim {

namespace {

constexpr double kCoincidenceTol = 1e-9;  // m

struct Node {
  double x;
  double z;
  int cafe_id;  // -1 for anchors
};

CableChain chain_from_nodes(const CableSystemConfig& config, const std::vector<Node>& nodes) {
  CableChain chain;
  chain.pretension = config.total_pretension();
  chain.node_x.reserve(nodes.size());
  chain.node_z.reserve(nodes.size());
  for (const auto& n : nodes) {
    chain.node_x.push_back(n.x);
    chain.node_z.push_back(n.cafe_id < 0 ? 0.0 : n.z);
    if (n.cafe_id >= 0) chain.cafe_ids.push_back(n.cafe_id);
  }
  const std::size_t segments = nodes.size() - 1;
  chain.rest_length.resize(segments);
  chain.stiffness.resize(segments);
  for (std::size_t s = 0; s < segments; ++s) {
    const double rest = chain.node_x[s + 1] - chain.node_x[s];
    if (rest <= kCoincidenceTol) {
      std::ostringstream os;
      os << "chain nodes coincide along the span near x=" << chain.node_x[s];
      throw DegenerateGeometryError(os.str());
    }
    chain.rest_length[s] = rest;
    chain.stiffness[s] = config.segment_stiffness(rest);
  }
  return chain;
}

std::vector<Node> sorted_cafe_nodes(std::span<const CafeState> cafes) {
  std::vector<Node> nodes;
  nodes.reserve(cafes.size());
  for (const auto& c : cafes) nodes.push_back({c.x, c.z, c.id});
  std::sort(nodes.begin(), nodes.end(),
            [](const Node& a, const Node& b) { return a.x < b.x; });
  return nodes;
}

}  // namespace

CableChain build_chain(const CableSystemConfig& config, std::span<const CafeState> cafes) {
  std::vector<Node> nodes = sorted_cafe_nodes(cafes);
  nodes.insert(nodes.begin(), {0.0, 0.0, -1});
  nodes.push_back({config.span_length, 0.0, -1});
  return chain_from_nodes(config, nodes);
}

std::vector<CableChain> build_chains(const CableSystemConfig& config,
                                     std::span<const CafeState> cafes) {
  std::vector<Node> interior = sorted_cafe_nodes(cafes);

  // Intermediate anchors pin z = 0 every anchor_spacing meters; one sitting
  // on top of a platform is skipped for this build.
  std::vector<double> anchors{0.0};
  if (config.anchor_spacing > 0.0) {
    for (double ax = config.anchor_spacing; ax < config.span_length - kCoincidenceTol;
         ax += config.anchor_spacing) {
      const bool on_cafe = std::any_of(interior.begin(), interior.end(), [&](const Node& n) {
        return std::abs(n.x - ax) < kCoincidenceTol;
      });
      if (!on_cafe) anchors.push_back(ax);
    }
  }
  anchors.push_back(config.span_length);

  std::vector<CableChain> chains;
  chains.reserve(anchors.size() - 1);
  std::size_t next = 0;
  for (std::size_t a = 0; a + 1 < anchors.size(); ++a) {
    std::vector<Node> nodes{{anchors[a], 0.0, -1}};
    while (next < interior.size() && interior[next].x < anchors[a + 1])
      nodes.push_back(interior[next++]);
    nodes.push_back({anchors[a + 1], 0.0, -1});
    chains.push_back(chain_from_nodes(config, nodes));
  }
  return chains;
}

}  // namespace cafesim
