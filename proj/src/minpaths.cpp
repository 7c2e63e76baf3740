#include "relnet/minpaths.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "relnet/kernels/kernels.hpp"  // neumaier_add

namespace relnet {

std::vector<MinPath> enumerate_minpaths(const Network& network,
                                        const PathEnumOptions& options) {
  std::vector<MinPath> paths;

  // Depth-first search trying neighbors in ascending node order, which
  // emits paths in lexicographic node-sequence order. `position[d]` is the
  // next adjacency slot to try at depth d.
  struct Frame {
    int node;
    std::size_t position;
  };
  std::vector<Frame> stack;
  std::vector<int> arc_trail;
  std::vector<bool> on_path(static_cast<std::size_t>(network.node_count()) + 1,
                            false);

  stack.push_back({network.source(), 0});
  on_path[static_cast<std::size_t>(network.source())] = true;

  while (!stack.empty()) {
    Frame& frame = stack.back();
    const std::span<const Network::Adjacent> out = network.out(frame.node);
    if (frame.position >= out.size()) {
      on_path[static_cast<std::size_t>(frame.node)] = false;
      stack.pop_back();
      if (!arc_trail.empty()) arc_trail.pop_back();
      continue;
    }
    const Network::Adjacent adj = out[frame.position++];
    if (on_path[static_cast<std::size_t>(adj.to)]) continue;

    if (adj.to == network.sink()) {
      if (paths.size() >= options.max_paths) {
        throw CapacityError("minimal path count exceeds the configured cap");
      }
      MinPath p;
      p.nodes.reserve(stack.size() + 1);
      for (const Frame& f : stack) p.nodes.push_back(f.node);
      p.nodes.push_back(adj.to);
      p.arcs = arc_trail;
      p.arcs.push_back(adj.arc);
      p.forward.reserve(p.arcs.size());
      for (std::size_t i = 0; i < p.arcs.size(); ++i) {
        p.forward.push_back(network.arc(p.arcs[i]).tail == p.nodes[i]);
      }
      paths.push_back(std::move(p));
      continue;
    }

    on_path[static_cast<std::size_t>(adj.to)] = true;
    arc_trail.push_back(adj.arc);
    stack.push_back({adj.to, 0});
  }
  return paths;
}

double path_cost(const Network& network, const MinPath& path) {
  double total = 0.0;
  for (int arc : path.arcs) total += network.arc(arc).cost;
  return total;
}

double path_prob(const Network& network, const MinPath& path) {
  double product = 1.0;
  for (int arc : path.arcs) product *= network.arc(arc).prob;
  return product;
}

ArcState path_state(const Network& network, const MinPath& path) {
  std::uint64_t bits = 0;
  for (int arc : path.arcs) bits |= std::uint64_t{1} << (arc - 1);
  return ArcState(bits, network.arc_count());
}

double union_reliability(const Network& network,
                         const std::vector<MinPath>& paths) {
  if (paths.empty()) return 0.0;

  // Inclusion-exclusion over path subsets, folding subsets with the same
  // union arc set into one signed coefficient as paths are added.
  std::unordered_map<std::uint64_t, double> coefficient;
  coefficient.reserve(1024);
  std::vector<std::pair<std::uint64_t, double>> updates;
  for (const MinPath& path : paths) {
    const std::uint64_t mask = path_state(network, path).bits();
    updates.clear();
    updates.emplace_back(mask, 1.0);
    for (const auto& [union_mask, c] : coefficient) {
      updates.emplace_back(union_mask | mask, -c);
    }
    for (const auto& [union_mask, c] : updates) {
      auto it = coefficient.try_emplace(union_mask, 0.0).first;
      it->second += c;
      if (it->second == 0.0) coefficient.erase(it);
    }
  }

  std::vector<std::pair<std::uint64_t, double>> terms(coefficient.begin(),
                                                      coefficient.end());
  std::sort(terms.begin(), terms.end());
  double sum = 0.0, comp = 0.0;
  for (const auto& [union_mask, c] : terms) {
    double product = 1.0;
    std::uint64_t bits = union_mask;
    while (bits != 0) {
      const int i = std::countr_zero(bits);
      bits &= bits - 1;
      product *= network.arcs()[static_cast<std::size_t>(i)].prob;
    }
    kern::neumaier_add(sum, comp, c * product);
  }
  return sum + comp;
}

MpBudgetReport mp_budget_solve(const Network& network, double per_path_budget,
                               const PathEnumOptions& options) {
  if (!(per_path_budget >= 0.0)) {
    throw ContractError("per-path budget must be non-negative");
  }
  MpBudgetReport report;
  report.all_paths = enumerate_minpaths(network, options);

  std::vector<MinPath> feasible_paths;
  std::uint64_t union_bits = 0;
  for (std::size_t i = 0; i < report.all_paths.size(); ++i) {
    const MinPath& p = report.all_paths[i];
    report.per_path_cost.push_back(path_cost(network, p));
    report.per_path_prob.push_back(path_prob(network, p));
    if (report.per_path_cost.back() <= per_path_budget) {
      report.feasible.push_back(i);
      feasible_paths.push_back(p);
      union_bits |= path_state(network, p).bits();
    }
  }
  report.reliability = union_reliability(network, feasible_paths);
  report.union_build_cost =
      cost_of(network, ArcState(union_bits, network.arc_count()));
  return report;
}

std::optional<int> min_feasible_path_size(const Network& network, double budget,
                                          const PathEnumOptions& options) {
  if (!(budget >= 0.0)) {
    throw ContractError("budget must be non-negative");
  }
  std::optional<int> smallest;
  for (const MinPath& p : enumerate_minpaths(network, options)) {
    if (path_cost(network, p) <= budget) {
      const int size = static_cast<int>(p.arcs.size());
      if (!smallest || size < *smallest) smallest = size;
    }
  }
  return smallest;
}

}  // namespace relnet
