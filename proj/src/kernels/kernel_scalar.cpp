#include <array>
#include <bit>

#include "relnet/kernels/kernels.hpp"

namespace relnet::kern {

namespace {

std::uint64_t reach_mask_scalar(const Plan& plan, std::uint64_t block) {
  std::array<std::uint64_t, 130> reach{};
  reach[static_cast<std::size_t>(plan.source)] = ~std::uint64_t{0};
  const std::uint64_t sink_goal = plan.valid_mask;

  bool changed = true;
  while (changed) {
    changed = false;
    for (const PlannedArc& arc : plan.arcs) {
      const std::uint64_t w =
          arc.low >= 0 ? kLowPattern[static_cast<std::size_t>(arc.low)]
                       : (((block >> arc.high_bit) & 1u) ? ~std::uint64_t{0}
                                                         : std::uint64_t{0});
      std::uint64_t add = reach[arc.tail] & w & ~reach[arc.head];
      if (add != 0) {
        reach[arc.head] |= add;
        changed = true;
      }
      if (arc.both_ways) {
        add = reach[arc.head] & w & ~reach[arc.tail];
        if (add != 0) {
          reach[arc.tail] |= add;
          changed = true;
        }
      }
    }
    if ((reach[static_cast<std::size_t>(plan.sink)] & sink_goal) == sink_goal) {
      break;  // every valid state already reaches the sink
    }
  }
  return reach[static_cast<std::size_t>(plan.sink)];
}

double masked_sum_scalar(const double* table, std::uint64_t mask) {
  double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
  for (int g = 0; g < 16; ++g) {
    const unsigned nibble = static_cast<unsigned>((mask >> (4 * g)) & 0xFu);
    if (nibble & 1u) acc0 += table[4 * g + 0];
    if (nibble & 2u) acc1 += table[4 * g + 1];
    if (nibble & 4u) acc2 += table[4 * g + 2];
    if (nibble & 8u) acc3 += table[4 * g + 3];
  }
  return (acc0 + acc1) + (acc2 + acc3);
}

void accumulate_scalar(const Plan& plan, std::uint64_t begin, std::uint64_t end,
                       Accum& acc) {
  for (std::uint64_t block = begin; block < end; ++block) {
    const std::uint64_t mask = reach_mask_scalar(plan, block) & plan.valid_mask;
    acc.connected_states += static_cast<std::uint64_t>(std::popcount(mask));
    if (mask != 0) {
      const double s = masked_sum_scalar(plan.low_prob.data(), mask);
      neumaier_add(acc.sum, acc.comp, block_prob(plan, block) * s);
    }
  }
}

constexpr Kernel kScalar = {
    "scalar",
    &reach_mask_scalar,
    &masked_sum_scalar,
    &accumulate_scalar,
};

}  // namespace

const Kernel& scalar_kernel() { return kScalar; }

}  // namespace relnet::kern
