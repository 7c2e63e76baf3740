// AVX2 variant: reachability for four 64-state blocks per fixpoint pass
// (256 substates per bitwise op) and lane-strided masked sums. Compiled
// with AVX2 codegen and only ever selected after a runtime CPU check.

#include "relnet/kernels/kernels.hpp"

#if (defined(__x86_64__) || defined(__i386__)) && defined(__AVX2__)
#define RELNET_KERNEL_AVX2 1
#include <immintrin.h>

#include <array>
#include <bit>
#endif

namespace relnet::kern {

#if defined(RELNET_KERNEL_AVX2)

namespace {

alignas(32) constexpr std::uint64_t kLaneSelect[16][4] = {
    {0, 0, 0, 0},  {~0ULL, 0, 0, 0},  {0, ~0ULL, 0, 0},  {~0ULL, ~0ULL, 0, 0},
    {0, 0, ~0ULL, 0},  {~0ULL, 0, ~0ULL, 0},  {0, ~0ULL, ~0ULL, 0},
    {~0ULL, ~0ULL, ~0ULL, 0},  {0, 0, 0, ~0ULL},  {~0ULL, 0, 0, ~0ULL},
    {0, ~0ULL, 0, ~0ULL},  {~0ULL, ~0ULL, 0, ~0ULL},  {0, 0, ~0ULL, ~0ULL},
    {~0ULL, 0, ~0ULL, ~0ULL},  {0, ~0ULL, ~0ULL, ~0ULL},
    {~0ULL, ~0ULL, ~0ULL, ~0ULL},
};

double masked_sum_avx2(const double* table, std::uint64_t mask) {
  __m256d acc = _mm256_setzero_pd();
  for (int g = 0; g < 16; ++g) {
    const __m256d v = _mm256_loadu_pd(table + 4 * g);
    const __m256d sel = _mm256_load_pd(reinterpret_cast<const double*>(
        kLaneSelect[(mask >> (4 * g)) & 0xFu]));
    acc = _mm256_add_pd(acc, _mm256_and_pd(v, sel));
  }
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const double a0 = _mm_cvtsd_f64(lo);
  const double a1 = _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
  const double a2 = _mm_cvtsd_f64(hi);
  const double a3 = _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi));
  return (a0 + a1) + (a2 + a3);
}

// Single-block fallback for ranges not aligned to four blocks; the same
// contract as the scalar kernel's reach.
std::uint64_t reach_mask_one(const Plan& plan, std::uint64_t block) {
  std::array<std::uint64_t, 130> reach{};
  std::array<std::uint64_t, 64> words;
  const std::size_t arc_count = plan.arcs.size();
  for (std::size_t i = 0; i < arc_count; ++i) {
    const PlannedArc& arc = plan.arcs[i];
    words[i] = arc.low >= 0
                   ? kLowPattern[static_cast<std::size_t>(arc.low)]
                   : (((block >> arc.high_bit) & 1u) ? ~std::uint64_t{0}
                                                     : std::uint64_t{0});
  }
  reach[static_cast<std::size_t>(plan.source)] = ~std::uint64_t{0};
  const std::uint64_t sink_goal = plan.valid_mask;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < arc_count; ++i) {
      const PlannedArc& arc = plan.arcs[i];
      std::uint64_t add = reach[arc.tail] & words[i] & ~reach[arc.head];
      if (add != 0) {
        reach[arc.head] |= add;
        changed = true;
      }
      if (arc.both_ways) {
        add = reach[arc.head] & words[i] & ~reach[arc.tail];
        if (add != 0) {
          reach[arc.tail] |= add;
          changed = true;
        }
      }
    }
    if ((reach[static_cast<std::size_t>(plan.sink)] & sink_goal) == sink_goal) {
      break;
    }
  }
  return reach[static_cast<std::size_t>(plan.sink)];
}

// Reach words for blocks base..base+3, one per lane of each __m256i.
void reach_mask_quad(const Plan& plan, std::uint64_t base,
                     std::uint64_t out[4]) {
  __m256i reach[130];
  for (int v = 0; v <= plan.nodes; ++v) reach[v] = _mm256_setzero_si256();

  __m256i words[64];
  const std::size_t arc_count = plan.arcs.size();
  for (std::size_t i = 0; i < arc_count; ++i) {
    const PlannedArc& arc = plan.arcs[i];
    if (arc.low >= 0) {
      words[i] = _mm256_set1_epi64x(static_cast<long long>(
          kLowPattern[static_cast<std::size_t>(arc.low)]));
    } else if (arc.high_bit == 0) {
      words[i] = _mm256_setr_epi64x(0, -1, 0, -1);
    } else if (arc.high_bit == 1) {
      words[i] = _mm256_setr_epi64x(0, 0, -1, -1);
    } else {
      words[i] = ((base >> arc.high_bit) & 1u) ? _mm256_set1_epi64x(-1)
                                               : _mm256_setzero_si256();
    }
  }

  reach[static_cast<std::size_t>(plan.source)] = _mm256_set1_epi64x(-1);
  const __m256i sink_goal = _mm256_set1_epi64x(
      static_cast<long long>(plan.valid_mask));
  const std::size_t sink = static_cast<std::size_t>(plan.sink);

  while (true) {
    __m256i any = _mm256_setzero_si256();
    for (std::size_t i = 0; i < arc_count; ++i) {
      const PlannedArc& arc = plan.arcs[i];
      __m256i add = _mm256_andnot_si256(
          reach[arc.head], _mm256_and_si256(reach[arc.tail], words[i]));
      reach[arc.head] = _mm256_or_si256(reach[arc.head], add);
      any = _mm256_or_si256(any, add);
      if (arc.both_ways) {
        add = _mm256_andnot_si256(
            reach[arc.tail], _mm256_and_si256(reach[arc.head], words[i]));
        reach[arc.tail] = _mm256_or_si256(reach[arc.tail], add);
        any = _mm256_or_si256(any, add);
      }
    }
    if (_mm256_testc_si256(reach[sink], sink_goal)) break;
    if (_mm256_testz_si256(any, any)) break;
  }

  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), reach[sink]);
  out[0] = lanes[0];
  out[1] = lanes[1];
  out[2] = lanes[2];
  out[3] = lanes[3];
}

std::uint64_t reach_mask_avx2(const Plan& plan, std::uint64_t block) {
  return reach_mask_one(plan, block);
}

void finish_block(const Plan& plan, std::uint64_t block, std::uint64_t raw_mask,
                  Accum& acc) {
  const std::uint64_t mask = raw_mask & plan.valid_mask;
  acc.connected_states += static_cast<std::uint64_t>(std::popcount(mask));
  if (mask != 0) {
    const double s = masked_sum_avx2(plan.low_prob.data(), mask);
    neumaier_add(acc.sum, acc.comp, block_prob(plan, block) * s);
  }
}

void accumulate_avx2(const Plan& plan, std::uint64_t begin, std::uint64_t end,
                     Accum& acc) {
  std::uint64_t block = begin;
  while (block < end && (block & 3u) != 0) {
    finish_block(plan, block, reach_mask_one(plan, block), acc);
    ++block;
  }
  while (block + 4 <= end) {
    std::uint64_t masks[4];
    reach_mask_quad(plan, block, masks);
    for (int lane = 0; lane < 4; ++lane) {
      finish_block(plan, block + static_cast<std::uint64_t>(lane), masks[lane],
                   acc);
    }
    block += 4;
  }
  while (block < end) {
    finish_block(plan, block, reach_mask_one(plan, block), acc);
    ++block;
  }
}

constexpr Kernel kAvx2 = {
    "avx2",
    &reach_mask_avx2,
    &masked_sum_avx2,
    &accumulate_avx2,
};

}  // namespace

const Kernel* avx2_kernel() { return cpu_has_avx2() ? &kAvx2 : nullptr; }

#else

const Kernel* avx2_kernel() { return nullptr; }

#endif

}  // namespace relnet::kern
