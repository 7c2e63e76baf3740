#include "relnet/reliability.hpp"

#include <string>

namespace relnet {

ReliabilityResult reliability(const Network& network, const ArcState& state,
                              const ReliabilityOptions& options) {
  if (state.width() != network.arc_count()) {
    throw ContractError("state width does not match the network");
  }
  if (state.popcount() > options.max_working_arcs) {
    throw CapacityError(
        "subnetwork with " + std::to_string(state.popcount()) +
        " working arcs is too large for exact enumeration (cap " +
        std::to_string(options.max_working_arcs) + ")");
  }

  const kern::Plan plan = kern::make_plan(network, state);
  const kern::Kernel& kernel = kern::select_kernel(options.kernel);
  kern::Accum acc;
  kernel.accumulate(plan, 0, plan.block_count, acc);

  ReliabilityResult result;
  result.value = acc.total();
  result.states_evaluated = std::uint64_t{1} << state.popcount();
  result.connected_states = acc.connected_states;
  return result;
}

}  // namespace relnet
