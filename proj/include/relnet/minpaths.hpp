#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relnet/network.hpp"

namespace relnet {

// A minimal path: a simple source->sink path, stored in traversal order.
// Every simple path is minimal (no arc of it is redundant).
struct MinPath {
  std::vector<int> arcs;      // arc indices, traversal order
  std::vector<int> nodes;     // node sequence, source..sink, arcs.size()+1
  std::vector<bool> forward;  // per arc: traversed tail->head as stored
};

struct PathEnumOptions {
  std::uint64_t max_paths = 1'000'000;  // abort instead of exhausting memory
};

// All minimal paths, ordered lexicographically by node sequence.
// Returns an empty list when the sink is unreachable.
std::vector<MinPath> enumerate_minpaths(const Network& network,
                                        const PathEnumOptions& options = {});

double path_cost(const Network& network, const MinPath& path);
double path_prob(const Network& network, const MinPath& path);
ArcState path_state(const Network& network, const MinPath& path);

// Probability that at least one listed path has all of its arcs working,
// by inclusion-exclusion with identical union arc sets merged.
double union_reliability(const Network& network,
                         const std::vector<MinPath>& paths);

// Traditional per-path budget problem: discard paths costing more than
// the per-path budget, then evaluate the union of the remaining ones.
struct MpBudgetReport {
  std::vector<MinPath> all_paths;
  std::vector<std::size_t> feasible;  // indices into all_paths
  std::vector<double> per_path_cost;
  std::vector<double> per_path_prob;
  double reliability = 0.0;
  double union_build_cost = 0.0;  // cost of building every feasible path
};

MpBudgetReport mp_budget_solve(const Network& network, double per_path_budget,
                               const PathEnumOptions& options = {});

// Minimum arc count among paths whose cost fits the budget; nullopt when
// no path does.
std::optional<int> min_feasible_path_size(const Network& network,
                                          double budget,
                                          const PathEnumOptions& options = {});

}  // namespace relnet
