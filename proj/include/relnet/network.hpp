#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace relnet {

// Contract violations (width mismatches, malformed inputs).
class ContractError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Problem size exceeds a configured enumeration cap.
class CapacityError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Arc {
  int index = 0;          // 1-based position in the arc list
  int tail = 0;           // node id
  int head = 0;           // node id
  bool oriented = true;   // false: traversable in both directions
  double prob = 1.0;      // working probability, in (0,1]
  double cost = 0.0;      // build cost, >= 0
};

// Fixed-width working/failed vector, one bit per arc. Bit i-1 holds the
// state of arc i, so the printed form reads left-to-right as x_1..x_m.
class ArcState {
 public:
  ArcState() = default;
  ArcState(std::uint64_t bits, int width);

  static ArcState all_zero(int width) { return ArcState(0, width); }
  static ArcState all_one(int width);
  // Parses "11011" with the leftmost character as arc 1.
  static ArcState from_string(std::string_view text);

  int width() const { return width_; }
  std::uint64_t bits() const { return bits_; }
  bool get(int arc_index) const;            // 1-based
  ArcState with(int arc_index, bool on) const;
  int popcount() const;

  // Componentwise x_i <= y_i for all i.
  bool subset_of(const ArcState& other) const;

  std::string to_string() const;

  friend bool operator==(const ArcState&, const ArcState&) = default;

 private:
  std::uint64_t bits_ = 0;
  int width_ = 0;
};

// Strictly increasing tuple of arc indices (s_1 < ... < s_mu); a compact
// encoding of a fixed-cardinality arc subset.
class StepwiseVector {
 public:
  StepwiseVector() = default;
  explicit StepwiseVector(std::vector<int> entries);

  int width() const { return static_cast<int>(entries_.size()); }
  std::span<const int> entries() const { return entries_; }
  int entry(int k) const { return entries_.at(static_cast<std::size_t>(k)); }

  friend bool operator==(const StepwiseVector&, const StepwiseVector&) = default;

 private:
  std::vector<int> entries_;
};

// Binary-state network: nodes 1..n, arcs 1..m, fixed source and sink.
// Immutable after construction; adjacency is precomputed so per-state
// connectivity checks allocate nothing.
class Network {
 public:
  struct Adjacent {
    int arc = 0;  // arc index
    int to = 0;   // neighbor reached by traversing it
  };

  Network(int node_count, std::vector<Arc> arcs, int source, int sink);

  int node_count() const { return node_count_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const Arc& arc(int index) const;  // 1-based
  const std::vector<Arc>& arcs() const { return arcs_; }
  int source() const { return source_; }
  int sink() const { return sink_; }

  // Outgoing traversals from a node; unoriented arcs appear on both
  // endpoints. Sorted by (neighbor, arc) for deterministic searches.
  std::span<const Adjacent> out(int node) const;

 private:
  int node_count_ = 0;
  std::vector<Arc> arcs_;
  int source_ = 0;
  int sink_ = 0;
  std::vector<Adjacent> adjacency_;
  std::vector<int> adjacency_offsets_;  // node -> [offset, offset_next)
};

// Build cost of the subnetwork selected by `state`: sum of C(a_i) over
// working arcs, accumulated in ascending arc order.
double cost_of(const Network& network, const ArcState& state);

// Probability of exactly this state: product of Pr(a) over working arcs
// times (1 - Pr(a)) over failed arcs.
double prob_of(const Network& network, const ArcState& state);

// Binary image B(S) of a stepwise vector: bit j set iff j is an entry.
ArcState binary_image(const StepwiseVector& s, int m);

}  // namespace relnet
