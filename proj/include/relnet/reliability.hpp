#pragma once

#include <cstdint>

#include "relnet/kernels/kernels.hpp"
#include "relnet/network.hpp"

namespace relnet {

struct ReliabilityResult {
  double value = 0.0;
  std::uint64_t states_evaluated = 0;
  std::uint64_t connected_states = 0;
};

struct ReliabilityOptions {
  // Hard cap on popcount(state); 2^cap substates are enumerated.
  int max_working_arcs = 30;
  kern::Dispatch kernel = kern::Dispatch::automatic;
};

// Exact two-terminal reliability of the subnetwork G(state): the
// probability, over the working arcs only, that some source->sink path
// survives. Arcs absent from `state` do not exist in G(state).
ReliabilityResult reliability(const Network& network, const ArcState& state,
                              const ReliabilityOptions& options = {});

}  // namespace relnet
