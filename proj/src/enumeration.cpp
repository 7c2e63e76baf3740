#include "relnet/enumeration.hpp"

#include <numeric>

namespace relnet {

BatCursor::BatCursor(int width) {
  if (width < 1 || width > 64) {
    throw ContractError("BAT width must be in 1..64");
  }
  current_ = ArcState::all_zero(width);
}

bool BatCursor::advance() {
  if (exhausted_) return false;
  const int k = current_.width();
  const std::uint64_t bits = current_.bits();
  // Rule 1: setting the first zero coordinate and clearing the earlier
  // ones is exactly a binary increment with x_1 as the low bit.
  if (k < 64 && bits + 1 == (std::uint64_t{1} << k)) {
    exhausted_ = true;
    return false;
  }
  if (k == 64 && bits == ~std::uint64_t{0}) {
    exhausted_ = true;
    return false;
  }
  current_ = ArcState(bits + 1, k);
  return true;
}

StepwiseCursor::StepwiseCursor(int m, int mu) : m_(m), mu_(mu) {
  if (mu < 1 || mu > m) {
    throw ContractError("stepwise width must satisfy 1 <= mu <= m");
  }
  entries_.resize(static_cast<std::size_t>(mu));
  std::iota(entries_.begin(), entries_.end(), 1);
}

StepwiseCursor StepwiseCursor::with_first_entry(int m, int mu, int first) {
  StepwiseCursor cursor(m, mu);
  if (first < 1 || first > m - mu + 1) {
    throw ContractError("fixed first entry outside its ceiling");
  }
  for (int k = 0; k < mu; ++k) {
    cursor.entries_[static_cast<std::size_t>(k)] = first + k;
  }
  cursor.fixed_prefix_ = 1;
  return cursor;
}

std::uint64_t StepwiseCursor::current_bits() const {
  std::uint64_t bits = 0;
  for (int entry : entries_) bits |= std::uint64_t{1} << (entry - 1);
  return bits;
}

bool StepwiseCursor::advance() {
  if (exhausted_) return false;
  // Lexicographic successor: bump the rightmost entry below its ceiling
  // u_i = m - mu + i, then restack everything after it.
  for (int i = mu_ - 1; i >= fixed_prefix_; --i) {
    if (entries_[static_cast<std::size_t>(i)] < m_ - mu_ + i + 1) {
      ++entries_[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < mu_; ++j) {
        entries_[static_cast<std::size_t>(j)] =
            entries_[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  exhausted_ = true;
  return false;
}

std::vector<ArcState> bat_all(int k) {
  if (k < 1) throw ContractError("BAT width must be positive");
  if (k > 30) throw CapacityError("bat_all would materialize more than 2^30 states");
  std::vector<ArcState> out;
  out.reserve(std::uint64_t{1} << k);
  BatCursor cursor(k);
  do {
    out.push_back(cursor.current());
  } while (cursor.advance());
  return out;
}

std::vector<StepwiseVector> stepwise_all(int m, int mu) {
  StepwiseCursor cursor(m, mu);
  std::vector<StepwiseVector> out;
  do {
    out.push_back(cursor.current());
  } while (cursor.advance());
  return out;
}

}  // namespace relnet
