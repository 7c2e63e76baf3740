// relnet: exact reliability and budget-constrained design of binary-state
// two-terminal networks.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relnet/connectivity.hpp"
#include "relnet/io.hpp"

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct CommonArgs {
  std::string network_path;
  bool json = false;
  std::string kernel = "auto";
  int threads = 1;
};

relnet::kern::Dispatch parse_kernel(const std::string& name) {
  if (name == "auto") return relnet::kern::Dispatch::automatic;
  if (name == "scalar") return relnet::kern::Dispatch::scalar;
  if (name == "avx2") return relnet::kern::Dispatch::avx2;
  throw CLI::ValidationError("--kernel", "expected auto, scalar, or avx2");
}

struct LoadedNetwork {
  relnet::Network network;
  relnet::io::RunMeta meta;
};

LoadedNetwork load_network(const CommonArgs& args) {
  const std::string text = relnet::io::read_file(args.network_path);
  const relnet::io::NetworkDocument doc = relnet::io::document_from_json(text);
  relnet::io::RunMeta meta;
  meta.network_path = args.network_path;
  meta.network_name = doc.name;
  meta.network_hash = relnet::io::fnv1a64(text);
  meta.kernel = args.kernel;
  meta.threads = args.threads;
  return {relnet::io::to_network(doc), std::move(meta)};
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("network,-n,--network", args.network_path,
                  "network document (JSON)")
      ->required();
  cmd->add_flag("--json", args.json, "emit a machine-readable report");
  cmd->add_option("--kernel", args.kernel,
                  "evaluation kernel: auto, scalar, avx2")
      ->capture_default_str();
  cmd->add_option("--threads", args.threads,
                  "worker hint for per-level evaluation")
      ->capture_default_str();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      if (!current.empty()) out.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "relnet: exact two-terminal reliability and budget-constrained design "
      "of binary-state networks"};
  app.require_subcommand(1);

  // --- solve ---------------------------------------------------------
  CommonArgs solve_args;
  double solve_budget = 0.0;
  std::string solve_algorithm = "stepwise";
  std::string solve_mmin = "hop";
  bool solve_all_optima = false;
  bool solve_timings = false;
  relnet::SolveOptions solve_options;
  CLI::App* solve = app.add_subcommand(
      "solve", "most reliable subnetwork within a total budget");
  add_common(solve, solve_args);
  solve->add_option("-b,--budget", solve_budget, "total budget C*")
      ->required();
  solve
      ->add_option("-a,--algorithm", solve_algorithm,
                   "stepwise, bat, or oracle")
      ->capture_default_str();
  solve->add_option("--mmin", solve_mmin, "lower level bound: hop or exact")
      ->capture_default_str();
  solve->add_flag("--all-optima", solve_all_optima,
                  "list every optimal vector seen");
  solve->add_flag("--timings", solve_timings,
                  "include wall time in the report (non-reproducible)");
  solve
      ->add_option("--enum-cap", solve_options.reliability_cap,
                   "max working arcs for exact reliability")
      ->capture_default_str();
  solve->add_option("--bat-cap", solve_options.bat_cap,
                    "max arcs for the full-enumeration baseline")
      ->capture_default_str();
  solve->add_option("--oracle-cap", solve_options.oracle_cap,
                    "max arcs for the brute-force oracle")
      ->capture_default_str();
  solve->add_option("--max-rows", solve_options.max_rows,
                    "detail rows kept per level")
      ->capture_default_str();

  // --- reliability ---------------------------------------------------
  CommonArgs rel_args;
  std::string rel_state;
  int rel_cap = 30;
  CLI::App* rel = app.add_subcommand(
      "reliability", "exact reliability of one subnetwork state");
  add_common(rel, rel_args);
  rel->add_option("-s,--state", rel_state,
                  "bit string, leftmost character is arc 1")
      ->required();
  rel->add_option("--enum-cap", rel_cap, "max working arcs")
      ->capture_default_str();

  // --- minpaths ------------------------------------------------------
  CommonArgs mp_args;
  double mp_path_budget = -1.0;
  bool mp_have_budget = false;
  CLI::App* mp = app.add_subcommand("minpaths", "enumerate minimal paths");
  add_common(mp, mp_args);
  mp->add_option_function<double>(
        "--budget-per-path",
        [&](const double& v) {
          mp_path_budget = v;
          mp_have_budget = true;
        },
        "mark paths whose own cost fits this budget");

  // --- mp-budget -----------------------------------------------------
  CommonArgs mpb_args;
  double mpb_budget = 0.0;
  CLI::App* mpb = app.add_subcommand(
      "mp-budget", "traditional per-path budget problem");
  add_common(mpb, mpb_args);
  mpb->add_option("-b,--budget", mpb_budget, "per-path budget C_ub")
      ->required();

  // --- bench ---------------------------------------------------------
  CommonArgs bench_args;
  std::string bench_budgets;
  std::string bench_algorithms = "stepwise,bat";
  std::string bench_mmin = "hop";
  relnet::SolveOptions bench_options;
  CLI::App* bench = app.add_subcommand(
      "bench", "compare algorithms across budgets (CSV)");
  add_common(bench, bench_args);
  bench->add_option("--budgets", bench_budgets, "comma-separated budgets")
      ->required();
  bench
      ->add_option("--algorithms", bench_algorithms,
                   "comma-separated: stepwise, bat, oracle")
      ->capture_default_str();
  bench->add_option("--mmin", bench_mmin, "hop or exact")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      LoadedNetwork loaded = load_network(solve_args);
      solve_options.kernel = parse_kernel(solve_args.kernel);
      solve_options.threads = solve_args.threads;
      solve_options.collect_optima = solve_all_optima;
      if (solve_mmin == "exact") {
        solve_options.mmin = relnet::MminMode::exact;
      } else if (solve_mmin != "hop") {
        std::cerr << "error: --mmin expects hop or exact\n";
        return kExitError;
      }
      loaded.meta.algorithm = solve_algorithm;
      loaded.meta.budget = solve_budget;
      loaded.meta.mmin_mode = solve_mmin;
      loaded.meta.include_timing = solve_timings;

      relnet::BudgetProblem problem(loaded.network, solve_budget);
      relnet::SolveReport report;
      if (solve_algorithm == "stepwise") {
        report = relnet::solve_stepwise(problem, solve_options);
      } else if (solve_algorithm == "bat") {
        report = relnet::solve_bat_baseline(problem, solve_options);
      } else if (solve_algorithm == "oracle") {
        report = relnet::oracle_solve(problem, solve_options);
      } else {
        std::cerr << "error: unknown algorithm " << solve_algorithm << "\n";
        return kExitError;
      }
      if (solve_args.json) {
        std::cout << relnet::io::solve_report_json(loaded.network, report,
                                                   loaded.meta);
      } else {
        std::cout << relnet::io::solve_report_table(loaded.network, report,
                                                    loaded.meta);
      }
      return report.best ? kExitSolved : kExitInfeasible;
    }

    if (rel->parsed()) {
      LoadedNetwork loaded = load_network(rel_args);
      const relnet::ArcState state = relnet::ArcState::from_string(rel_state);
      relnet::ReliabilityOptions options;
      options.max_working_arcs = rel_cap;
      options.kernel = parse_kernel(rel_args.kernel);
      const relnet::ReliabilityResult result =
          relnet::reliability(loaded.network, state, options);
      loaded.meta.algorithm = "reliability";
      if (rel_args.json) {
        std::cout << relnet::io::reliability_report_json(loaded.network, state,
                                                         result, loaded.meta);
      } else {
        std::cout << relnet::io::reliability_report_table(state, result);
      }
      return kExitSolved;
    }

    if (mp->parsed()) {
      LoadedNetwork loaded = load_network(mp_args);
      loaded.meta.algorithm = "minpaths";
      if (mp_have_budget) {
        loaded.meta.budget = mp_path_budget;
        const relnet::MpBudgetReport report =
            relnet::mp_budget_solve(loaded.network, mp_path_budget);
        if (mp_args.json) {
          std::cout << relnet::io::mp_budget_report_json(loaded.network, report,
                                                         loaded.meta);
        } else {
          std::cout << relnet::io::mp_budget_report_table(
              loaded.network, report, mp_path_budget);
        }
        return report.feasible.empty() ? kExitInfeasible : kExitSolved;
      }
      const std::vector<relnet::MinPath> paths =
          relnet::enumerate_minpaths(loaded.network);
      if (mp_args.json) {
        std::cout << relnet::io::minpaths_report_json(loaded.network, paths,
                                                      loaded.meta);
      } else {
        std::cout << relnet::io::minpaths_report_table(loaded.network, paths);
      }
      return paths.empty() ? kExitInfeasible : kExitSolved;
    }

    if (mpb->parsed()) {
      LoadedNetwork loaded = load_network(mpb_args);
      loaded.meta.algorithm = "mp-budget";
      loaded.meta.budget = mpb_budget;
      const relnet::MpBudgetReport report =
          relnet::mp_budget_solve(loaded.network, mpb_budget);
      if (mpb_args.json) {
        std::cout << relnet::io::mp_budget_report_json(loaded.network, report,
                                                       loaded.meta);
      } else {
        std::cout << relnet::io::mp_budget_report_table(loaded.network, report,
                                                        mpb_budget);
      }
      return report.feasible.empty() ? kExitInfeasible : kExitSolved;
    }

    if (bench->parsed()) {
      LoadedNetwork loaded = load_network(bench_args);
      bench_options.kernel = parse_kernel(bench_args.kernel);
      bench_options.threads = bench_args.threads;
      bench_options.mmin = bench_mmin == "exact" ? relnet::MminMode::exact
                                                 : relnet::MminMode::hop;
      bench_options.max_rows = 0;  // no per-state detail in benchmark runs
      std::cout << relnet::io::bench_csv_header();
      for (const std::string& budget_text : split_list(bench_budgets)) {
        const double budget = std::stod(budget_text);
        relnet::BudgetProblem problem(loaded.network, budget);
        for (const std::string& algorithm : split_list(bench_algorithms)) {
          relnet::SolveReport report;
          if (algorithm == "stepwise") {
            report = relnet::solve_stepwise(problem, bench_options);
          } else if (algorithm == "bat") {
            report = relnet::solve_bat_baseline(problem, bench_options);
          } else if (algorithm == "oracle") {
            report = relnet::oracle_solve(problem, bench_options);
          } else {
            std::cerr << "error: unknown algorithm " << algorithm << "\n";
            return kExitError;
          }
          std::cout << relnet::io::bench_csv_row(bench_args.network_path,
                                                 budget, algorithm, report);
          std::cout.flush();
        }
      }
      return kExitSolved;
    }
  } catch (const relnet::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const relnet::ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const relnet::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
