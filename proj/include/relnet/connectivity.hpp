#pragma once

#include <vector>

#include "relnet/network.hpp"

namespace relnet {

// Layer decomposition produced by the layered search: L_1 = {source},
// L_i = nodes first reached in round i. Layers are pairwise disjoint.
struct LayerTrace {
  std::vector<std::vector<int>> layers;
  bool connected = false;
};

// True iff the sink is reachable from the source using only working arcs;
// unoriented arcs are traversable both ways.
bool is_connected(const Network& network, const ArcState& state);

// Full layer decomposition behind is_connected, for diagnostics.
LayerTrace layer_trace(const Network& network, const ArcState& state);

}  // namespace relnet
