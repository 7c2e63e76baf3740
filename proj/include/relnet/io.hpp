#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relnet/minpaths.hpp"
#include "relnet/network.hpp"
#include "relnet/optimizer.hpp"
#include "relnet/reliability.hpp"

namespace relnet::io {

class ParseError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// On-disk description of a network; `to_network` enforces the model
// invariants that go beyond field-level checks.
struct NetworkDocument {
  std::string schema_version = "1";
  std::string name;
  int node_count = 0;
  int source = 0;
  int sink = 0;
  std::vector<Arc> arcs;
};

NetworkDocument document_from_json(std::string_view text);
NetworkDocument document_from_file(const std::filesystem::path& path);
std::string document_to_json(const NetworkDocument& document);
Network to_network(const NetworkDocument& document);
NetworkDocument to_document(const Network& network, std::string name = {});

std::uint64_t fnv1a64(std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

// Context echoed into reports so a run can be reproduced.
struct RunMeta {
  std::string network_path;
  std::string network_name;
  std::uint64_t network_hash = 0;
  std::string algorithm;
  double budget = 0.0;
  std::string mmin_mode = "hop";
  std::string kernel = "auto";
  int threads = 1;
  bool include_timing = false;  // timing makes output non-reproducible
};

// Fixed-format numbers used across reports: reliabilities with 7 decimals,
// costs with up to 6 significant digits.
std::string format_reliability(double value);
std::string format_cost(double value);

std::string solve_report_json(const Network& network, const SolveReport& report,
                              const RunMeta& meta);
std::string solve_report_table(const Network& network,
                               const SolveReport& report, const RunMeta& meta);

std::string reliability_report_json(const Network& network,
                                    const ArcState& state,
                                    const ReliabilityResult& result,
                                    const RunMeta& meta);
std::string reliability_report_table(const ArcState& state,
                                     const ReliabilityResult& result);

// When `per_path_budget` is non-negative, each path carries a feasibility
// mark against it.
std::string minpaths_report_json(const Network& network,
                                 const std::vector<MinPath>& paths,
                                 const RunMeta& meta,
                                 double per_path_budget = -1.0);
std::string minpaths_report_table(const Network& network,
                                  const std::vector<MinPath>& paths,
                                  double per_path_budget = -1.0);

std::string mp_budget_report_json(const Network& network,
                                  const MpBudgetReport& report,
                                  const RunMeta& meta);
std::string mp_budget_report_table(const Network& network,
                                   const MpBudgetReport& report,
                                   double per_path_budget);

std::string bench_csv_header();
std::string bench_csv_row(const std::string& network_path, double budget,
                          const std::string& algorithm,
                          const SolveReport& report);

}  // namespace relnet::io
