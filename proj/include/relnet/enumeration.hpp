#pragma once

#include <cstdint>
#include <vector>

#include "relnet/network.hpp"

namespace relnet {

// Emits all 2^k binary-state vectors, starting from all-zero. Each advance
// sets the first zero coordinate and clears every earlier one, which walks
// the states in binary-counter order with x_1 as the least significant bit.
class BatCursor {
 public:
  explicit BatCursor(int width);

  const ArcState& current() const { return current_; }
  bool exhausted() const { return exhausted_; }

  // Moves to the next vector; returns false once all 2^k have been emitted.
  bool advance();

 private:
  ArcState current_;
  bool exhausted_ = false;
};

// Emits all C(m, mu) stepwise vectors of width mu in lexicographic order,
// from (1,2,...,mu) up to (m-mu+1,...,m).
class StepwiseCursor {
 public:
  StepwiseCursor(int m, int mu);

  // Restricts enumeration to vectors with a fixed first entry; used to
  // partition a level across workers.
  static StepwiseCursor with_first_entry(int m, int mu, int first);

  const std::vector<int>& entries() const { return entries_; }
  StepwiseVector current() const { return StepwiseVector(entries_); }
  std::uint64_t current_bits() const;
  bool exhausted() const { return exhausted_; }

  bool advance();

 private:
  int m_ = 0;
  int mu_ = 0;
  int fixed_prefix_ = 0;  // leading entries that advance() must not touch
  std::vector<int> entries_;
  bool exhausted_ = false;
};

std::vector<ArcState> bat_all(int k);
std::vector<StepwiseVector> stepwise_all(int m, int mu);

}  // namespace relnet
