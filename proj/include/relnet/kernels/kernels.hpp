#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "relnet/network.hpp"

namespace relnet::kern {

// Substates of a subnetwork's working arcs are enumerated in binary-counter
// order and processed 64 at a time: the low `low_bits` substate bits index
// positions inside a block, the remaining bits select the block. Inside a
// block, arc presence across all 64 states is a single machine word, so
// reachability propagates for the whole block with bitwise ops.
struct PlannedArc {
  std::uint8_t tail = 0;
  std::uint8_t head = 0;
  bool both_ways = false;
  std::int8_t low = -1;         // in-block bit 0..5, or -1 when block-driven
  std::uint8_t high_bit = 0;    // block bit when low < 0
};

struct Plan {
  int nodes = 0;
  int source = 0;
  int sink = 0;
  int active_arcs = 0;              // popcount of the evaluated state
  int low_bits = 0;                 // min(active_arcs, 6)
  std::uint64_t block_count = 1;    // 2^(active_arcs - low_bits)
  std::uint64_t valid_mask = 0;     // in-block states that exist
  std::vector<PlannedArc> arcs;
  std::array<double, 64> low_prob{};         // Pr of low substate t, zero-padded
  std::vector<double> high_prob, high_fail;  // per block bit
};

Plan make_plan(const Network& network, const ArcState& state);

// Bit t of pattern j is bit j of t.
inline constexpr std::array<std::uint64_t, 6> kLowPattern = {
    0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL, 0xf0f0f0f0f0f0f0f0ULL,
    0xff00ff00ff00ff00ULL, 0xffff0000ffff0000ULL, 0xffffffff00000000ULL,
};

// Probability factor contributed by the block-selecting bits.
inline double block_prob(const Plan& plan, std::uint64_t block) {
  double p = 1.0;
  for (std::size_t j = 0; j < plan.high_prob.size(); ++j) {
    p *= ((block >> j) & 1u) ? plan.high_prob[j] : plan.high_fail[j];
  }
  return p;
}

inline void neumaier_add(double& sum, double& comp, double value) {
  const double t = sum + value;
  if (std::abs(sum) >= std::abs(value)) {
    comp += (sum - t) + value;
  } else {
    comp += (value - t) + sum;
  }
  sum = t;
}

struct Accum {
  double sum = 0.0;
  double comp = 0.0;
  std::uint64_t connected_states = 0;

  double total() const { return sum + comp; }
};

// Every kernel implements the same contract and must produce bit-identical
// results for identical plans:
//  - reach_mask: fixpoint over the block's 64 states (exact, bitwise);
//  - masked_sum: four stride-4 partial sums combined as (s0+s1)+(s2+s3);
//  - accumulate: per block in ascending order, connected = reach & valid,
//    then neumaier_add(block_prob * masked_sum).
struct Kernel {
  const char* name;
  std::uint64_t (*reach_mask)(const Plan&, std::uint64_t block);
  double (*masked_sum)(const double* table64, std::uint64_t mask);
  void (*accumulate)(const Plan&, std::uint64_t block_begin,
                     std::uint64_t block_end, Accum&);
};

enum class Dispatch { automatic, scalar, avx2 };

const Kernel& scalar_kernel();
const Kernel* avx2_kernel();  // null when not compiled in or not supported
bool cpu_has_avx2();
const Kernel& select_kernel(Dispatch dispatch);

}  // namespace relnet::kern
