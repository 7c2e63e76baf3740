#include "relnet/network.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <utility>

namespace relnet {

namespace {

constexpr int kMaxArcs = 64;  // states are packed into one machine word

void require(bool ok, const std::string& message) {
  if (!ok) throw ContractError(message);
}

}  // namespace

ArcState::ArcState(std::uint64_t bits, int width) : bits_(bits), width_(width) {
  require(width >= 0 && width <= kMaxArcs, "ArcState width must be in 0..64");
  if (width < kMaxArcs) {
    require((bits >> width) == 0, "ArcState bits exceed the declared width");
  }
}

ArcState ArcState::all_one(int width) {
  require(width >= 0 && width <= kMaxArcs, "ArcState width must be in 0..64");
  if (width == 0) return ArcState(0, 0);
  return ArcState(~std::uint64_t{0} >> (kMaxArcs - width), width);
}

ArcState ArcState::from_string(std::string_view text) {
  require(!text.empty() && text.size() <= kMaxArcs,
          "state string must have 1..64 characters");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    require(c == '0' || c == '1', "state string may contain only 0 and 1");
    if (c == '1') bits |= std::uint64_t{1} << i;
  }
  return ArcState(bits, static_cast<int>(text.size()));
}

bool ArcState::get(int arc_index) const {
  require(arc_index >= 1 && arc_index <= width_, "arc index out of range");
  return (bits_ >> (arc_index - 1)) & 1u;
}

ArcState ArcState::with(int arc_index, bool on) const {
  require(arc_index >= 1 && arc_index <= width_, "arc index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (arc_index - 1);
  return ArcState(on ? (bits_ | bit) : (bits_ & ~bit), width_);
}

int ArcState::popcount() const { return std::popcount(bits_); }

bool ArcState::subset_of(const ArcState& other) const {
  require(width_ == other.width_, "state width mismatch");
  return (bits_ & other.bits_) == bits_;
}

std::string ArcState::to_string() const {
  std::string out(static_cast<std::size_t>(width_), '0');
  for (int i = 0; i < width_; ++i) {
    if ((bits_ >> i) & 1u) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

StepwiseVector::StepwiseVector(std::vector<int> entries)
    : entries_(std::move(entries)) {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    require(entries_[k] >= 1, "stepwise entries must be positive arc indices");
    if (k > 0) {
      require(entries_[k - 1] < entries_[k],
              "stepwise entries must strictly increase");
    }
  }
}

Network::Network(int node_count, std::vector<Arc> arcs, int source, int sink)
    : node_count_(node_count),
      arcs_(std::move(arcs)),
      source_(source),
      sink_(sink) {
  require(node_count_ >= 2, "network needs at least two nodes");
  require(!arcs_.empty(), "network needs at least one arc");
  require(arcs_.size() <= kMaxArcs, "at most 64 arcs are supported");
  require(source_ >= 1 && source_ <= node_count_, "source node out of range");
  require(sink_ >= 1 && sink_ <= node_count_, "sink node out of range");
  require(source_ != sink_, "source and sink must differ");

  std::set<std::pair<int, int>> seen_directed;
  std::set<std::pair<int, int>> seen_undirected;
  std::vector<bool> touched(static_cast<std::size_t>(node_count_) + 1, false);
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    require(a.index == static_cast<int>(i) + 1, "arc indices must be dense 1..m");
    require(a.tail >= 1 && a.tail <= node_count_, "arc tail out of range");
    require(a.head >= 1 && a.head <= node_count_, "arc head out of range");
    require(a.tail != a.head, "loops are not allowed");
    require(std::isfinite(a.prob) && a.prob > 0.0 && a.prob <= 1.0,
            "arc probability must be in (0,1]");
    require(std::isfinite(a.cost) && a.cost >= 0.0,
            "arc cost must be non-negative");
    require(seen_directed.insert({a.tail, a.head}).second,
            "parallel arcs are not allowed");
    const auto unordered = std::minmax(a.tail, a.head);
    if (!seen_undirected.insert({unordered.first, unordered.second}).second) {
      // An opposite-direction twin only makes sense when both are oriented.
      require(a.oriented, "parallel arcs are not allowed");
      for (std::size_t j = 0; j < i; ++j) {
        if (std::minmax(arcs_[j].tail, arcs_[j].head) == unordered) {
          require(arcs_[j].oriented, "parallel arcs are not allowed");
        }
      }
    }
    touched[static_cast<std::size_t>(a.tail)] = true;
    touched[static_cast<std::size_t>(a.head)] = true;
  }
  for (int v = 1; v <= node_count_; ++v) {
    require(touched[static_cast<std::size_t>(v)],
            "every node must appear on at least one arc");
  }

  // Precompute per-node traversal lists.
  std::vector<std::vector<Adjacent>> lists(static_cast<std::size_t>(node_count_) + 1);
  for (const Arc& a : arcs_) {
    lists[static_cast<std::size_t>(a.tail)].push_back({a.index, a.head});
    if (!a.oriented) {
      lists[static_cast<std::size_t>(a.head)].push_back({a.index, a.tail});
    }
  }
  adjacency_offsets_.assign(static_cast<std::size_t>(node_count_) + 2, 0);
  for (int v = 1; v <= node_count_; ++v) {
    auto& list = lists[static_cast<std::size_t>(v)];
    std::sort(list.begin(), list.end(), [](const Adjacent& x, const Adjacent& y) {
      return x.to != y.to ? x.to < y.to : x.arc < y.arc;
    });
    adjacency_offsets_[static_cast<std::size_t>(v)] =
        static_cast<int>(adjacency_.size());
    adjacency_.insert(adjacency_.end(), list.begin(), list.end());
  }
  adjacency_offsets_[static_cast<std::size_t>(node_count_) + 1] =
      static_cast<int>(adjacency_.size());
}

const Arc& Network::arc(int index) const {
  if (index < 1 || index > arc_count()) {
    throw ContractError("arc index out of range");
  }
  return arcs_[static_cast<std::size_t>(index - 1)];
}

std::span<const Network::Adjacent> Network::out(int node) const {
  if (node < 1 || node > node_count_) {
    throw ContractError("node id out of range");
  }
  const int begin = adjacency_offsets_[static_cast<std::size_t>(node)];
  const int end = adjacency_offsets_[static_cast<std::size_t>(node) + 1];
  return {adjacency_.data() + begin, static_cast<std::size_t>(end - begin)};
}

double cost_of(const Network& network, const ArcState& state) {
  if (state.width() != network.arc_count()) {
    throw ContractError("state width does not match the network");
  }
  double total = 0.0;
  std::uint64_t bits = state.bits();
  while (bits != 0) {
    const int i = std::countr_zero(bits);
    total += network.arcs()[static_cast<std::size_t>(i)].cost;
    bits &= bits - 1;
  }
  return total;
}

double prob_of(const Network& network, const ArcState& state) {
  if (state.width() != network.arc_count()) {
    throw ContractError("state width does not match the network");
  }
  double product = 1.0;
  for (int i = 0; i < network.arc_count(); ++i) {
    const Arc& a = network.arcs()[static_cast<std::size_t>(i)];
    product *= ((state.bits() >> i) & 1u) ? a.prob : 1.0 - a.prob;
  }
  return product;
}

ArcState binary_image(const StepwiseVector& s, int m) {
  std::uint64_t bits = 0;
  for (int entry : s.entries()) {
    if (entry < 1 || entry > m) {
      throw ContractError("stepwise entry outside 1..m");
    }
    bits |= std::uint64_t{1} << (entry - 1);
  }
  return ArcState(bits, m);
}

}  // namespace relnet
