#include "relnet/connectivity.hpp"

#include <algorithm>
#include <array>

namespace relnet {

namespace {

// With at most 64 arcs and every node on some arc, node ids fit in 1..128.
struct NodeSet {
  std::array<std::uint64_t, 2> words{0, 0};

  bool test(int v) const {
    return (words[static_cast<std::size_t>(v >> 6)] >> (v & 63)) & 1u;
  }
  void set(int v) {
    words[static_cast<std::size_t>(v >> 6)] |= std::uint64_t{1} << (v & 63);
  }
};

void check_width(const Network& network, const ArcState& state) {
  if (state.width() != network.arc_count()) {
    throw ContractError("state width does not match the network");
  }
}

}  // namespace

bool is_connected(const Network& network, const ArcState& state) {
  check_width(network, state);
  const std::uint64_t bits = state.bits();
  NodeSet seen;
  seen.set(network.source());

  // Frontier-at-a-time expansion; each arc side is relaxed at most once
  // because a node enters the frontier at most once.
  std::array<int, 129> frontier;
  std::array<int, 129> next;
  int frontier_size = 1;
  frontier[0] = network.source();

  while (frontier_size > 0) {
    int next_size = 0;
    for (int f = 0; f < frontier_size; ++f) {
      for (const Network::Adjacent& adj : network.out(frontier[f])) {
        if (((bits >> (adj.arc - 1)) & 1u) == 0) continue;
        if (seen.test(adj.to)) continue;
        if (adj.to == network.sink()) return true;
        seen.set(adj.to);
        next[next_size++] = adj.to;
      }
    }
    for (int f = 0; f < next_size; ++f) frontier[f] = next[f];
    frontier_size = next_size;
  }
  return false;
}

LayerTrace layer_trace(const Network& network, const ArcState& state) {
  check_width(network, state);
  const std::uint64_t bits = state.bits();
  LayerTrace trace;
  NodeSet seen;
  seen.set(network.source());
  trace.layers.push_back({network.source()});

  while (true) {
    const std::vector<int>& frontier = trace.layers.back();
    std::vector<int> layer;
    for (int u : frontier) {
      for (const Network::Adjacent& adj : network.out(u)) {
        if (((bits >> (adj.arc - 1)) & 1u) == 0) continue;
        if (seen.test(adj.to)) continue;
        seen.set(adj.to);
        layer.push_back(adj.to);
        if (adj.to == network.sink()) trace.connected = true;
      }
    }
    // Empty new layer means no further node is reachable.
    if (layer.empty()) return trace;
    std::sort(layer.begin(), layer.end());
    trace.layers.push_back(std::move(layer));
    if (trace.connected) return trace;
  }
}

}  // namespace relnet
