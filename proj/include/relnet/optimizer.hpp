#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "relnet/minpaths.hpp"
#include "relnet/reliability.hpp"

namespace relnet {

// Maximize reliability(X) subject to cost_of(X) <= budget over connected
// subnetworks X of the given network.
struct BudgetProblem {
  Network network;
  double budget = 0.0;

  BudgetProblem(Network net, double budget_limit);
};

enum class MminMode {
  hop,    // unweighted source->sink hop distance (cheap, always valid)
  exact,  // smallest arc count among budget-feasible minimal paths
};

enum class HaltReason {
  all_feasible_level,    // every candidate at the level was feasible
  best_dominates_level,  // best feasible matched the level's best overall
  empty_level_chain,     // no level to process (or unreachable sink)
  reached_m_min,         // level chain exhausted
};

const char* to_string(HaltReason reason);

struct SolveOptions {
  MminMode mmin = MminMode::hop;
  kern::Dispatch kernel = kern::Dispatch::automatic;
  int reliability_cap = 30;  // popcount cap for exact reliability
  int bat_cap = 30;          // arc-count cap for the full-enumeration baseline
  int oracle_cap = 20;       // arc-count cap for the brute-force oracle
  int threads = 1;           // worker hint for per-level evaluation
  bool collect_optima = false;
  std::uint64_t max_rows = 4096;  // per-level detail rows kept for reports
};

struct LevelRow {
  std::vector<int> tuple;  // stepwise entries; empty for whole-state scans
  ArcState state;
  bool connected = false;
  bool feasible = false;
  double reliability = 0.0;
  double cost = 0.0;
};

struct LevelSummary {
  int level = 0;  // d
  std::uint64_t generated = 0;
  std::uint64_t excluded = 0;    // dominance-pruned, not part of B_d^-
  std::uint64_t candidates = 0;  // |B_d^-|
  std::uint64_t connected = 0;
  std::uint64_t feasible = 0;
  std::optional<ArcState> best_feasible;  // X_d^*
  double best_feasible_reliability = 0.0;
  double best_feasible_cost = 0.0;
  std::optional<ArcState> best_overall;  // X_d^#
  double best_overall_reliability = 0.0;
  double best_overall_cost = 0.0;
  bool all_feasible = false;
  std::vector<LevelRow> rows;  // first max_rows candidates, in order
  bool rows_complete = true;
};

struct SolveReport {
  std::optional<ArcState> best;
  double best_reliability = 0.0;
  double best_cost = 0.0;
  int m_max = 0;
  int m_min = 0;
  std::vector<LevelSummary> levels;       // stepwise solver only
  std::vector<LevelRow> scan_rows;        // bat/oracle scans, capped
  bool scan_rows_complete = true;
  HaltReason halt_reason = HaltReason::empty_level_chain;
  std::uint64_t vectors_examined = 0;
  std::uint64_t feasible_found = 0;
  std::chrono::duration<double> wall_time{0.0};
  std::vector<ArcState> optima;  // filled when collect_optima is set
};

// Largest i such that the i cheapest arcs together still fit the budget.
int compute_m_max(const Network& network, double budget);

// Hop distance from source to sink over the full network, respecting arc
// orientation; nullopt when the sink is unreachable.
std::optional<int> hop_distance(const Network& network);

// Bottom-up stepwise search with dominance pruning: levels d = m_max down
// to m_min, candidates not below any feasible vector found at a higher
// level, early halt when a level is all-feasible or its best feasible
// vector dominates the level.
SolveReport solve_stepwise(const BudgetProblem& problem,
                           const SolveOptions& options = {});

// Baseline: full 2^m state enumeration, filtered by cost and connectivity.
SolveReport solve_bat_baseline(const BudgetProblem& problem,
                               const SolveOptions& options = {});

// Independent brute force used as a test oracle: plain subset loops and
// depth-first reachability, sharing no evaluation path with the solvers.
SolveReport oracle_solve(const BudgetProblem& problem,
                         const SolveOptions& options = {});

}  // namespace relnet
