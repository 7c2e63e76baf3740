#include "relnet/kernels/kernels.hpp"

#include <bit>

namespace relnet::kern {

Plan make_plan(const Network& network, const ArcState& state) {
  if (state.width() != network.arc_count()) {
    throw ContractError("state width does not match the network");
  }
  Plan plan;
  plan.nodes = network.node_count();
  plan.source = network.source();
  plan.sink = network.sink();
  plan.active_arcs = state.popcount();
  plan.low_bits = plan.active_arcs < 6 ? plan.active_arcs : 6;
  plan.block_count = std::uint64_t{1} << (plan.active_arcs - plan.low_bits);
  const int valid_states = 1 << plan.low_bits;
  plan.valid_mask = valid_states == 64 ? ~std::uint64_t{0}
                                       : (std::uint64_t{1} << valid_states) - 1;

  plan.low_prob[0] = 1.0;
  int position = 0;
  std::uint64_t bits = state.bits();
  while (bits != 0) {
    const int i = std::countr_zero(bits);
    bits &= bits - 1;
    const Arc& a = network.arcs()[static_cast<std::size_t>(i)];
    PlannedArc pa;
    pa.tail = static_cast<std::uint8_t>(a.tail);
    pa.head = static_cast<std::uint8_t>(a.head);
    pa.both_ways = !a.oriented;
    if (position < plan.low_bits) {
      pa.low = static_cast<std::int8_t>(position);
      // Extend the low-substate probability table by one arc.
      const int half = 1 << position;
      for (int t = 0; t < half; ++t) {
        const double base = plan.low_prob[static_cast<std::size_t>(t)];
        plan.low_prob[static_cast<std::size_t>(t | half)] = base * a.prob;
        plan.low_prob[static_cast<std::size_t>(t)] = base * (1.0 - a.prob);
      }
    } else {
      pa.low = -1;
      pa.high_bit = static_cast<std::uint8_t>(position - plan.low_bits);
      plan.high_prob.push_back(a.prob);
      plan.high_fail.push_back(1.0 - a.prob);
    }
    plan.arcs.push_back(pa);
    ++position;
  }
  return plan;
}

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Kernel& select_kernel(Dispatch dispatch) {
  switch (dispatch) {
    case Dispatch::scalar:
      return scalar_kernel();
    case Dispatch::avx2: {
      const Kernel* k = avx2_kernel();
      if (k == nullptr) {
        throw ContractError("AVX2 kernel is not available on this machine");
      }
      return *k;
    }
    case Dispatch::automatic:
    default: {
      const Kernel* k = avx2_kernel();
      return k != nullptr ? *k : scalar_kernel();
    }
  }
}

}  // namespace relnet::kern
