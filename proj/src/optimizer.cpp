#include "relnet/optimizer.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <thread>
#include <utility>

#include "relnet/connectivity.hpp"
#include "relnet/enumeration.hpp"

namespace relnet {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kTieTolerance = 1e-12;

struct BestEntry {
  bool present = false;
  std::vector<int> tuple;
  std::uint64_t mask = 0;
  double reliability = 0.0;
  double cost = 0.0;
};

// Strictly-better update keeps the earliest vector in enumeration order
// within one worker; merging across workers breaks reliability ties by
// lexicographic tuple order, which is the enumeration order of a level.
void merge_best(BestEntry& into, const BestEntry& from) {
  if (!from.present) return;
  if (!into.present || from.reliability > into.reliability ||
      (from.reliability == into.reliability &&
       std::lexicographical_compare(from.tuple.begin(), from.tuple.end(),
                                    into.tuple.begin(), into.tuple.end()))) {
    into = from;
  }
}

struct WorkerResult {
  std::uint64_t generated = 0;
  std::uint64_t excluded = 0;
  std::uint64_t candidates = 0;
  std::uint64_t connected = 0;
  std::uint64_t feasible = 0;
  BestEntry best_feasible;
  BestEntry best_overall;
  std::vector<std::uint64_t> newly_feasible;
  std::vector<LevelRow> rows;
  bool rows_overflow = false;
  std::vector<std::pair<std::uint64_t, double>> feasible_pool;
};

struct LevelContext {
  const Network* network;
  double budget;
  const SolveOptions* options;
  const kern::Kernel* kernel;
  int level;
  const std::vector<std::uint64_t>* dominance_store;
};

bool dominated(const std::vector<std::uint64_t>& store, std::uint64_t mask) {
  for (std::uint64_t feasible_mask : store) {
    if ((mask & feasible_mask) == mask) return true;
  }
  return false;
}

// Evaluate every stepwise vector whose first entry lies in `firsts`.
void scan_partition(const LevelContext& ctx, const std::vector<int>& firsts,
                    WorkerResult& out) {
  const Network& net = *ctx.network;
  const int m = net.arc_count();
  ReliabilityOptions rel_options;
  rel_options.max_working_arcs = ctx.options->reliability_cap;
  rel_options.kernel = ctx.options->kernel;

  for (int first : firsts) {
    StepwiseCursor cursor =
        StepwiseCursor::with_first_entry(m, ctx.level, first);
    do {
      ++out.generated;
      const std::uint64_t mask = cursor.current_bits();
      if (dominated(*ctx.dominance_store, mask)) {
        ++out.excluded;
        continue;
      }
      ++out.candidates;
      const ArcState state(mask, m);
      const double cost = cost_of(net, state);
      const bool connected = is_connected(net, state);
      double rel = 0.0;
      if (connected) {
        ++out.connected;
        rel = reliability(net, state, rel_options).value;
      }
      const bool feasible = connected && cost <= ctx.budget;
      if (feasible) {
        ++out.feasible;
        out.newly_feasible.push_back(mask);
        if (ctx.options->collect_optima) {
          out.feasible_pool.emplace_back(mask, rel);
        }
      }
      if (feasible && (!out.best_feasible.present ||
                       rel > out.best_feasible.reliability)) {
        out.best_feasible = {true, cursor.entries(), mask, rel, cost};
      }
      if (!out.best_overall.present || rel > out.best_overall.reliability) {
        out.best_overall = {true, cursor.entries(), mask, rel, cost};
      }
      if (out.rows.size() <
          static_cast<std::size_t>(ctx.options->max_rows)) {
        out.rows.push_back(
            {cursor.entries(), state, connected, feasible, rel, cost});
      } else {
        out.rows_overflow = true;
      }
    } while (cursor.advance());
  }
}

WorkerResult scan_level(const LevelContext& ctx) {
  const int m = ctx.network->arc_count();
  const int first_max = m - ctx.level + 1;
  const int workers =
      std::clamp(ctx.options->threads, 1, first_max);

  if (workers == 1) {
    std::vector<int> firsts(static_cast<std::size_t>(first_max));
    for (int f = 1; f <= first_max; ++f) firsts[static_cast<std::size_t>(f - 1)] = f;
    WorkerResult result;
    scan_partition(ctx, firsts, result);
    return result;
  }

  std::vector<std::vector<int>> assignment(static_cast<std::size_t>(workers));
  for (int f = 1; f <= first_max; ++f) {
    assignment[static_cast<std::size_t>((f - 1) % workers)].push_back(f);
  }
  std::vector<WorkerResult> results(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&ctx, &assignment, &results, w] {
      scan_partition(ctx, assignment[static_cast<std::size_t>(w)],
                     results[static_cast<std::size_t>(w)]);
    });
  }
  for (std::thread& t : pool) t.join();

  WorkerResult merged;
  for (WorkerResult& r : results) {
    merged.generated += r.generated;
    merged.excluded += r.excluded;
    merged.candidates += r.candidates;
    merged.connected += r.connected;
    merged.feasible += r.feasible;
    merge_best(merged.best_feasible, r.best_feasible);
    merge_best(merged.best_overall, r.best_overall);
    merged.newly_feasible.insert(merged.newly_feasible.end(),
                                 r.newly_feasible.begin(),
                                 r.newly_feasible.end());
    merged.rows.insert(merged.rows.end(),
                       std::make_move_iterator(r.rows.begin()),
                       std::make_move_iterator(r.rows.end()));
    merged.rows_overflow = merged.rows_overflow || r.rows_overflow;
    merged.feasible_pool.insert(merged.feasible_pool.end(),
                                r.feasible_pool.begin(),
                                r.feasible_pool.end());
  }
  // Each worker keeps a prefix of its own ordered stream, so the merged
  // prefix of the global enumeration order is recovered by sorting.
  std::sort(merged.rows.begin(), merged.rows.end(),
            [](const LevelRow& a, const LevelRow& b) {
              return std::lexicographical_compare(
                  a.tuple.begin(), a.tuple.end(), b.tuple.begin(),
                  b.tuple.end());
            });
  if (merged.rows.size() > static_cast<std::size_t>(ctx.options->max_rows)) {
    merged.rows.resize(static_cast<std::size_t>(ctx.options->max_rows));
    merged.rows_overflow = true;
  }
  return merged;
}

void finalize_optima(SolveReport& report,
                     std::vector<std::pair<std::uint64_t, double>>& pool,
                     int width) {
  if (!report.best) return;
  const double cut =
      report.best_reliability -
      kTieTolerance * std::max(1.0, std::abs(report.best_reliability));
  std::vector<std::uint64_t> masks;
  for (const auto& [mask, rel] : pool) {
    if (rel >= cut) masks.push_back(mask);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  report.optima.reserve(masks.size());
  for (std::uint64_t mask : masks) report.optima.emplace_back(mask, width);
}

}  // namespace

BudgetProblem::BudgetProblem(Network net, double budget_limit)
    : network(std::move(net)), budget(budget_limit) {
  if (!std::isfinite(budget) || budget < 0.0) {
    throw ContractError("budget must be finite and non-negative");
  }
}

const char* to_string(HaltReason reason) {
  switch (reason) {
    case HaltReason::all_feasible_level:
      return "all-feasible-level";
    case HaltReason::best_dominates_level:
      return "best-dominates-level";
    case HaltReason::empty_level_chain:
      return "empty-level-chain";
    case HaltReason::reached_m_min:
      return "reached-m_min";
  }
  return "unknown";
}

int compute_m_max(const Network& network, double budget) {
  if (!(budget >= 0.0)) {
    throw ContractError("budget must be non-negative");
  }
  std::vector<double> costs;
  costs.reserve(static_cast<std::size_t>(network.arc_count()));
  for (const Arc& a : network.arcs()) costs.push_back(a.cost);
  std::sort(costs.begin(), costs.end());
  double prefix = 0.0;
  int count = 0;
  for (double c : costs) {
    prefix += c;
    if (prefix > budget) break;
    ++count;
  }
  return count;
}

std::optional<int> hop_distance(const Network& network) {
  std::vector<int> distance(static_cast<std::size_t>(network.node_count()) + 1,
                            -1);
  std::vector<int> frontier{network.source()};
  distance[static_cast<std::size_t>(network.source())] = 0;
  int hops = 0;
  while (!frontier.empty()) {
    ++hops;
    std::vector<int> next;
    for (int u : frontier) {
      for (const Network::Adjacent& adj : network.out(u)) {
        if (distance[static_cast<std::size_t>(adj.to)] >= 0) continue;
        distance[static_cast<std::size_t>(adj.to)] = hops;
        if (adj.to == network.sink()) return hops;
        next.push_back(adj.to);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

SolveReport solve_stepwise(const BudgetProblem& problem,
                           const SolveOptions& options) {
  const auto start = Clock::now();
  const Network& net = problem.network;
  const int m = net.arc_count();

  SolveReport report;
  report.m_max = compute_m_max(net, problem.budget);
  report.halt_reason = HaltReason::empty_level_chain;

  bool reachable = true;
  if (options.mmin == MminMode::hop) {
    if (const std::optional<int> hops = hop_distance(net)) {
      report.m_min = *hops;
    } else {
      reachable = false;
    }
  } else {
    if (const std::optional<int> size =
            min_feasible_path_size(net, problem.budget)) {
      report.m_min = *size;
    } else {
      reachable = false;  // no budget-feasible path, hence no feasible vector
    }
  }

  std::vector<std::uint64_t> dominance_store;
  std::vector<std::pair<std::uint64_t, double>> feasible_pool;
  BestEntry incumbent;
  bool processed_any_level = false;

  if (reachable) {
    const kern::Kernel& kernel = kern::select_kernel(options.kernel);
    for (int d = report.m_max; d >= report.m_min; --d) {
      processed_any_level = true;
      LevelContext ctx{&net,   problem.budget,  &options,
                       &kernel, d, &dominance_store};
      WorkerResult scan = scan_level(ctx);

      LevelSummary level;
      level.level = d;
      level.generated = scan.generated;
      level.excluded = scan.excluded;
      level.candidates = scan.candidates;
      level.connected = scan.connected;
      level.feasible = scan.feasible;
      level.rows = std::move(scan.rows);
      level.rows_complete = !scan.rows_overflow;
      if (scan.best_feasible.present) {
        level.best_feasible = ArcState(scan.best_feasible.mask, m);
        level.best_feasible_reliability = scan.best_feasible.reliability;
        level.best_feasible_cost = scan.best_feasible.cost;
      }
      if (scan.best_overall.present) {
        level.best_overall = ArcState(scan.best_overall.mask, m);
        level.best_overall_reliability = scan.best_overall.reliability;
        level.best_overall_cost = scan.best_overall.cost;
      }
      level.all_feasible =
          scan.candidates > 0 && scan.candidates == scan.feasible;

      report.vectors_examined += scan.generated;
      report.feasible_found += scan.feasible;
      if (options.collect_optima) {
        feasible_pool.insert(feasible_pool.end(), scan.feasible_pool.begin(),
                             scan.feasible_pool.end());
      }

      if (scan.candidates == 0) {
        // Empty level: nothing to judge, move down.
        report.levels.push_back(std::move(level));
        continue;
      }

      // Adopt the level's best feasible vector when it improves on the
      // incumbent; ties keep the higher level, found earlier.
      if (scan.best_feasible.present &&
          (!incumbent.present ||
           scan.best_feasible.reliability > incumbent.reliability)) {
        incumbent = scan.best_feasible;
      }

      const bool halt_all_feasible = level.all_feasible;
      const bool halt_dominates =
          scan.best_feasible.present &&
          scan.best_overall.reliability <= scan.best_feasible.reliability;
      report.levels.push_back(std::move(level));

      if (halt_all_feasible) {
        report.halt_reason = HaltReason::all_feasible_level;
        break;
      }
      if (halt_dominates) {
        report.halt_reason = HaltReason::best_dominates_level;
        break;
      }
      dominance_store.insert(dominance_store.end(),
                             scan.newly_feasible.begin(),
                             scan.newly_feasible.end());
    }
  }

  if (processed_any_level &&
      report.halt_reason == HaltReason::empty_level_chain) {
    report.halt_reason = HaltReason::reached_m_min;
  }
  if (incumbent.present) {
    report.best = ArcState(incumbent.mask, m);
    report.best_reliability = incumbent.reliability;
    report.best_cost = incumbent.cost;
  }
  if (options.collect_optima) {
    finalize_optima(report, feasible_pool, m);
  }
  report.wall_time = Clock::now() - start;
  return report;
}

SolveReport solve_bat_baseline(const BudgetProblem& problem,
                               const SolveOptions& options) {
  const auto start = Clock::now();
  const Network& net = problem.network;
  const int m = net.arc_count();
  if (m > options.bat_cap) {
    throw CapacityError("baseline enumeration of 2^" + std::to_string(m) +
                        " states exceeds the configured cap");
  }

  ReliabilityOptions rel_options;
  rel_options.max_working_arcs = options.reliability_cap;
  rel_options.kernel = options.kernel;

  const kern::Plan plan = kern::make_plan(net, ArcState::all_one(m));
  const kern::Kernel& kernel = kern::select_kernel(options.kernel);
  const int low_bits = plan.low_bits;
  const std::uint64_t valid_count = std::uint64_t{1} << low_bits;

  SolveReport report;
  report.m_max = compute_m_max(net, problem.budget);
  report.m_min = hop_distance(net).value_or(0);
  report.halt_reason = HaltReason::reached_m_min;  // full scans always finish

  BestEntry incumbent;
  std::vector<std::pair<std::uint64_t, double>> feasible_pool;

  for (std::uint64_t block = 0; block < plan.block_count; ++block) {
    const std::uint64_t connected_mask =
        kernel.reach_mask(plan, block) & plan.valid_mask;
    report.vectors_examined += valid_count;

    if (report.scan_rows.size() < static_cast<std::size_t>(options.max_rows)) {
      for (std::uint64_t t = 0; t < valid_count; ++t) {
        if (report.scan_rows.size() >=
            static_cast<std::size_t>(options.max_rows)) {
          break;
        }
        const ArcState state((block << low_bits) | t, m);
        const bool connected = (connected_mask >> t) & 1u;
        const double cost = cost_of(net, state);
        const bool feasible = connected && cost <= problem.budget;
        const double rel =
            feasible ? reliability(net, state, rel_options).value : 0.0;
        report.scan_rows.push_back({{}, state, connected, feasible, rel, cost});
      }
    }

    std::uint64_t bits = connected_mask;
    while (bits != 0) {
      const int t = std::countr_zero(bits);
      bits &= bits - 1;
      const std::uint64_t state_bits =
          (block << low_bits) | static_cast<std::uint64_t>(t);
      const ArcState state(state_bits, m);
      const double cost = cost_of(net, state);
      if (cost > problem.budget) continue;
      ++report.feasible_found;
      const double rel = reliability(net, state, rel_options).value;
      if (options.collect_optima) {
        feasible_pool.emplace_back(state_bits, rel);
      }
      if (!incumbent.present || rel > incumbent.reliability) {
        incumbent = {true, {}, state_bits, rel, cost};
      }
    }
  }

  report.scan_rows_complete =
      report.vectors_examined <= static_cast<std::uint64_t>(options.max_rows);
  if (incumbent.present) {
    report.best = ArcState(incumbent.mask, m);
    report.best_reliability = incumbent.reliability;
    report.best_cost = incumbent.cost;
  }
  if (options.collect_optima) {
    finalize_optima(report, feasible_pool, m);
  }
  report.wall_time = Clock::now() - start;
  return report;
}

namespace {

// Stack-based depth-first reachability, deliberately separate from the
// layered search and the block kernels.
bool dfs_reaches_sink(const Network& net, std::uint64_t bits) {
  std::array<std::uint64_t, 2> visited{0, 0};
  std::array<int, 129> stack;
  int depth = 0;
  stack[depth++] = net.source();
  visited[static_cast<std::size_t>(net.source() >> 6)] |=
      std::uint64_t{1} << (net.source() & 63);
  while (depth > 0) {
    const int u = stack[--depth];
    for (const Network::Adjacent& adj : net.out(u)) {
      if (((bits >> (adj.arc - 1)) & 1u) == 0) continue;
      const std::uint64_t bit = std::uint64_t{1} << (adj.to & 63);
      std::uint64_t& word = visited[static_cast<std::size_t>(adj.to >> 6)];
      if (word & bit) continue;
      if (adj.to == net.sink()) return true;
      word |= bit;
      stack[depth++] = adj.to;
    }
  }
  return false;
}

double oracle_reliability(const Network& net, std::uint64_t built_bits) {
  double sum = 0.0, comp = 0.0;
  std::uint64_t sub = built_bits;
  while (true) {
    if (dfs_reaches_sink(net, sub)) {
      double pr = 1.0;
      std::uint64_t bits = built_bits;
      while (bits != 0) {
        const int i = std::countr_zero(bits);
        bits &= bits - 1;
        const Arc& a = net.arcs()[static_cast<std::size_t>(i)];
        pr *= ((sub >> i) & 1u) ? a.prob : 1.0 - a.prob;
      }
      kern::neumaier_add(sum, comp, pr);
    }
    if (sub == 0) break;
    sub = (sub - 1) & built_bits;
  }
  return sum + comp;
}

}  // namespace

SolveReport oracle_solve(const BudgetProblem& problem,
                         const SolveOptions& options) {
  const auto start = Clock::now();
  const Network& net = problem.network;
  const int m = net.arc_count();
  if (m > options.oracle_cap) {
    throw CapacityError("oracle enumeration of 2^" + std::to_string(m) +
                        " states exceeds the configured cap");
  }

  SolveReport report;
  report.m_max = compute_m_max(net, problem.budget);
  report.m_min = hop_distance(net).value_or(0);
  report.halt_reason = HaltReason::reached_m_min;

  BestEntry incumbent;
  std::vector<std::pair<std::uint64_t, double>> feasible_pool;
  const std::uint64_t state_count = std::uint64_t{1} << m;
  for (std::uint64_t state_bits = 0; state_bits < state_count; ++state_bits) {
    double cost = 0.0;
    std::uint64_t bits = state_bits;
    while (bits != 0) {
      const int i = std::countr_zero(bits);
      bits &= bits - 1;
      cost += net.arcs()[static_cast<std::size_t>(i)].cost;
    }
    const bool recording =
        report.scan_rows.size() < static_cast<std::size_t>(options.max_rows);
    bool connected = false;
    bool feasible = false;
    double rel = 0.0;
    if (cost <= problem.budget || recording) {
      connected = dfs_reaches_sink(net, state_bits);
    }
    if (connected && cost <= problem.budget) {
      feasible = true;
      ++report.feasible_found;
      rel = oracle_reliability(net, state_bits);
      if (options.collect_optima) {
        feasible_pool.emplace_back(state_bits, rel);
      }
      if (!incumbent.present || rel > incumbent.reliability) {
        incumbent = {true, {}, state_bits, rel, cost};
      }
    }
    if (recording) {
      report.scan_rows.push_back(
          {{}, ArcState(state_bits, m), connected, feasible, rel, cost});
    }
  }

  report.vectors_examined = state_count;
  report.scan_rows_complete =
      state_count <= static_cast<std::uint64_t>(options.max_rows);
  if (incumbent.present) {
    report.best = ArcState(incumbent.mask, m);
    report.best_reliability = incumbent.reliability;
    report.best_cost = incumbent.cost;
  }
  if (options.collect_optima) {
    finalize_optima(report, feasible_pool, m);
  }
  report.wall_time = Clock::now() - start;
  return report;
}

}  // namespace relnet
