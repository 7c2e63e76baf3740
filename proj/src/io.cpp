#include "relnet/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace relnet::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

int require_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

double require_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

const json& require_field(const json& j, const char* key,
                          const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) fail(where + "." + key, "missing field");
  return *it;
}

std::string printf_format(const char* fmt, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), fmt, value);
  return buffer;
}

}  // namespace

NetworkDocument document_from_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("document", "expected a JSON object");

  NetworkDocument doc;
  if (const auto it = root.find("schema_version"); it != root.end()) {
    if (!it->is_string()) fail("schema_version", "expected a string");
    doc.schema_version = it->get<std::string>();
    if (doc.schema_version != "1") {
      fail("schema_version", "unsupported version " + doc.schema_version);
    }
  }
  if (const auto it = root.find("name"); it != root.end()) {
    if (!it->is_string()) fail("name", "expected a string");
    doc.name = it->get<std::string>();
  }
  doc.node_count = require_int(require_field(root, "node_count", "document"),
                               "node_count");
  doc.source = require_int(require_field(root, "source", "document"), "source");
  doc.sink = require_int(require_field(root, "sink", "document"), "sink");

  const json& arcs = require_field(root, "arcs", "document");
  if (!arcs.is_array() || arcs.empty()) {
    fail("arcs", "expected a non-empty array");
  }
  std::vector<bool> id_seen(arcs.size() + 1, false);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const std::string where = "arcs[" + std::to_string(i) + "]";
    const json& a = arcs[i];
    if (!a.is_object()) fail(where, "expected an object");
    Arc arc;
    arc.index = require_int(require_field(a, "id", where), where + ".id");
    if (arc.index < 1 || static_cast<std::size_t>(arc.index) > arcs.size()) {
      fail(where + ".id", "arc ids must be dense 1..m");
    }
    if (id_seen[static_cast<std::size_t>(arc.index)]) {
      fail(where + ".id", "duplicate arc id " + std::to_string(arc.index));
    }
    id_seen[static_cast<std::size_t>(arc.index)] = true;
    arc.tail = require_int(require_field(a, "from", where), where + ".from");
    arc.head = require_int(require_field(a, "to", where), where + ".to");
    if (arc.tail < 1 || arc.tail > doc.node_count) {
      fail(where + ".from", "unknown node " + std::to_string(arc.tail));
    }
    if (arc.head < 1 || arc.head > doc.node_count) {
      fail(where + ".to", "unknown node " + std::to_string(arc.head));
    }
    if (const auto it = a.find("oriented"); it != a.end()) {
      if (!it->is_boolean()) fail(where + ".oriented", "expected a boolean");
      arc.oriented = it->get<bool>();
    }
    arc.prob =
        require_number(require_field(a, "prob", where), where + ".prob");
    if (!(arc.prob > 0.0 && arc.prob <= 1.0)) {
      fail(where + ".prob", "probability outside (0,1]");
    }
    arc.cost =
        require_number(require_field(a, "cost", where), where + ".cost");
    if (!(arc.cost >= 0.0)) {
      fail(where + ".cost", "cost must be non-negative");
    }
    doc.arcs.push_back(arc);
  }
  // Store in arc-id order regardless of array order.
  std::sort(doc.arcs.begin(), doc.arcs.end(),
            [](const Arc& x, const Arc& y) { return x.index < y.index; });
  return doc;
}

NetworkDocument document_from_file(const std::filesystem::path& path) {
  return document_from_json(read_file(path));
}

std::string document_to_json(const NetworkDocument& document) {
  ordered_json root;
  root["schema_version"] = document.schema_version;
  if (!document.name.empty()) root["name"] = document.name;
  root["node_count"] = document.node_count;
  root["source"] = document.source;
  root["sink"] = document.sink;
  ordered_json arcs = ordered_json::array();
  for (const Arc& a : document.arcs) {
    ordered_json arc;
    arc["id"] = a.index;
    arc["from"] = a.tail;
    arc["to"] = a.head;
    arc["oriented"] = a.oriented;
    arc["prob"] = a.prob;
    arc["cost"] = a.cost;
    arcs.push_back(std::move(arc));
  }
  root["arcs"] = std::move(arcs);
  return root.dump(2) + "\n";
}

Network to_network(const NetworkDocument& document) {
  try {
    return Network(document.node_count, document.arcs, document.source,
                   document.sink);
  } catch (const ContractError& e) {
    throw ParseError(std::string("document violates the network model: ") +
                     e.what());
  }
}

NetworkDocument to_document(const Network& network, std::string name) {
  NetworkDocument doc;
  doc.name = std::move(name);
  doc.node_count = network.node_count();
  doc.source = network.source();
  doc.sink = network.sink();
  doc.arcs = network.arcs();
  return doc;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot read file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string format_reliability(double value) {
  return printf_format("%.7f", value);
}

std::string format_cost(double value) { return printf_format("%.6g", value); }

namespace {

void append_line(std::string& out, const char* line) {
  std::string text(line);
  const std::size_t end = text.find_last_not_of(" \n");
  text.erase(end == std::string::npos ? 0 : end + 1);
  out += text;
  out += "\n";
}

std::string tuple_to_string(const std::vector<int>& tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(tuple[i]);
  }
  out += ")";
  return out;
}

ordered_json meta_json(const RunMeta& meta, const Network& network) {
  char hash_text[32];
  std::snprintf(hash_text, sizeof(hash_text), "fnv1a64:%016llx",
                static_cast<unsigned long long>(meta.network_hash));
  ordered_json j;
  j["network"] = {{"path", meta.network_path},
                  {"name", meta.network_name},
                  {"hash", hash_text}};
  j["network"]["nodes"] = network.node_count();
  j["network"]["arcs"] = network.arc_count();
  j["network"]["source"] = network.source();
  j["network"]["sink"] = network.sink();
  ordered_json problem;
  problem["algorithm"] = meta.algorithm;
  problem["budget"] = meta.budget;
  problem["mmin_mode"] = meta.mmin_mode;
  problem["kernel"] = meta.kernel;
  problem["threads"] = meta.threads;
  j["problem"] = std::move(problem);
  return j;
}

ordered_json rows_json(const std::vector<LevelRow>& rows) {
  ordered_json out = ordered_json::array();
  for (const LevelRow& row : rows) {
    ordered_json r;
    if (!row.tuple.empty()) r["tuple"] = row.tuple;
    r["state"] = row.state.to_string();
    r["connected"] = row.connected;
    r["feasible"] = row.feasible;
    if (row.connected) r["reliability"] = row.reliability;
    r["cost"] = row.cost;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::string solve_report_json(const Network& network, const SolveReport& report,
                              const RunMeta& meta) {
  ordered_json root;
  root["schema_version"] = "1";
  ordered_json header = meta_json(meta, network);
  root["network"] = header["network"];
  root["problem"] = header["problem"];

  ordered_json result;
  result["status"] = report.best ? "solved" : "infeasible";
  if (report.best) {
    result["state"] = report.best->to_string();
    result["reliability"] = report.best_reliability;
    result["reliability_7dp"] = format_reliability(report.best_reliability);
    result["cost"] = report.best_cost;
  }
  result["m_max"] = report.m_max;
  result["m_min"] = report.m_min;
  result["halt_reason"] = to_string(report.halt_reason);
  result["vectors_examined"] = report.vectors_examined;
  result["feasible_found"] = report.feasible_found;
  if (!report.optima.empty()) {
    ordered_json optima = ordered_json::array();
    for (const ArcState& s : report.optima) optima.push_back(s.to_string());
    result["optima"] = std::move(optima);
  }
  root["result"] = std::move(result);

  if (!report.levels.empty()) {
    ordered_json levels = ordered_json::array();
    for (const LevelSummary& level : report.levels) {
      ordered_json l;
      l["d"] = level.level;
      l["generated"] = level.generated;
      l["excluded"] = level.excluded;
      l["candidates"] = level.candidates;
      l["connected"] = level.connected;
      l["feasible"] = level.feasible;
      l["all_feasible"] = level.all_feasible;
      if (level.best_feasible) {
        l["best_feasible"] = {
            {"state", level.best_feasible->to_string()},
            {"reliability", level.best_feasible_reliability},
            {"cost", level.best_feasible_cost}};
      }
      if (level.best_overall) {
        l["best_overall"] = {{"state", level.best_overall->to_string()},
                             {"reliability", level.best_overall_reliability}};
      }
      l["rows"] = rows_json(level.rows);
      l["rows_complete"] = level.rows_complete;
      levels.push_back(std::move(l));
    }
    root["levels"] = std::move(levels);
  }
  if (!report.scan_rows.empty()) {
    root["scan"] = {{"rows", rows_json(report.scan_rows)},
                    {"rows_complete", report.scan_rows_complete}};
  }
  if (meta.include_timing) {
    root["timing"] = {{"wall_seconds", report.wall_time.count()}};
  }
  return root.dump(2) + "\n";
}

namespace {

void append_level_table(std::string& out, const LevelSummary& level,
                        const std::optional<ArcState>& level_best) {
  out += "d=" + std::to_string(level.level) +
         "  generated=" + std::to_string(level.generated) +
         "  excluded=" + std::to_string(level.excluded) +
         "  candidates=" + std::to_string(level.candidates) +
         "  connected=" + std::to_string(level.connected) +
         "  feasible=" + std::to_string(level.feasible) + "\n";
  if (level.rows.empty()) return;

  std::size_t tuple_width = 1;
  for (const LevelRow& row : level.rows) {
    tuple_width = std::max(tuple_width, tuple_to_string(row.tuple).size());
  }
  char line[256];
  std::snprintf(line, sizeof(line), "  %5s  %-*s  %-*s  %-9s  %-8s  %s", "i",
                static_cast<int>(tuple_width), "S",
                level.rows[0].state.width(), "B(S)", "R(X)", "C(X)", "remark");
  append_line(out, line);
  for (std::size_t i = 0; i < level.rows.size(); ++i) {
    const LevelRow& row = level.rows[i];
    const std::string tuple = tuple_to_string(row.tuple);
    const std::string r_text =
        row.connected ? format_reliability(row.reliability) : "";
    std::string remark;
    if (!row.connected) {
      remark = "disconnected";
    } else if (!row.feasible) {
      remark = "over budget";
    } else if (level_best && row.state == *level_best) {
      remark = "*";
    }
    std::snprintf(line, sizeof(line), "  %5zu  %-*s  %s  %-9s  %-8s  %s",
                  i + 1, static_cast<int>(tuple_width), tuple.c_str(),
                  row.state.to_string().c_str(), r_text.c_str(),
                  format_cost(row.cost).c_str(), remark.c_str());
    append_line(out, line);
  }
  if (!level.rows_complete) {
    out += "  ... (" + std::to_string(level.candidates - level.rows.size()) +
           " more candidates not shown)\n";
  }
}

void append_scan_table(std::string& out, const SolveReport& report) {
  if (report.scan_rows.empty()) return;
  out += "state scan\n";
  char line[256];
  std::snprintf(line, sizeof(line), "  %7s  %-*s  %-8s  %-9s  %-8s  %-9s",
                "i", report.scan_rows[0].state.width(), "X", "C(X)",
                "connected", "feasible", "R(X)");
  append_line(out, line);
  for (std::size_t i = 0; i < report.scan_rows.size(); ++i) {
    const LevelRow& row = report.scan_rows[i];
    std::snprintf(line, sizeof(line), "  %7zu  %s  %-8s  %-9s  %-8s  %-9s",
                  i + 1, row.state.to_string().c_str(),
                  format_cost(row.cost).c_str(), row.connected ? "Y" : "",
                  row.feasible ? "Y" : "",
                  row.feasible ? format_reliability(row.reliability).c_str()
                               : "");
    append_line(out, line);
  }
  if (!report.scan_rows_complete) {
    out += "  ... (" +
           std::to_string(report.vectors_examined - report.scan_rows.size()) +
           " more states not shown)\n";
  }
}

}  // namespace

std::string solve_report_table(const Network& network,
                               const SolveReport& report, const RunMeta& meta) {
  std::string out;
  out += "network: " +
         (meta.network_name.empty() ? std::string("(unnamed)")
                                    : meta.network_name) +
         " (" + std::to_string(network.node_count()) + " nodes, " +
         std::to_string(network.arc_count()) + " arcs, source " +
         std::to_string(network.source()) + ", sink " +
         std::to_string(network.sink()) + ")\n";
  out += "algorithm: " + meta.algorithm + "\n";
  out += "budget: " + format_cost(meta.budget) + "\n";
  out += "m_max: " + std::to_string(report.m_max) +
         "  m_min: " + std::to_string(report.m_min) + "\n";
  for (const LevelSummary& level : report.levels) {
    out += "\n";
    append_level_table(out, level, level.best_feasible);
  }
  append_scan_table(out, report);
  out += "\n";
  out += "halt: " + std::string(to_string(report.halt_reason)) + "\n";
  out += "vectors examined: " + std::to_string(report.vectors_examined) + "\n";
  out += "feasible vectors: " + std::to_string(report.feasible_found) + "\n";
  if (report.best) {
    out += "best: X* = " + report.best->to_string() +
           "  R(X*) = " + format_reliability(report.best_reliability) +
           "  C(X*) = " + format_cost(report.best_cost) + "\n";
  } else {
    out += "best: none (no feasible connected vector within the budget)\n";
  }
  if (!report.optima.empty()) {
    out += "optima:";
    for (const ArcState& s : report.optima) out += " " + s.to_string();
    out += "\n";
  }
  return out;
}

std::string reliability_report_json(const Network& network,
                                    const ArcState& state,
                                    const ReliabilityResult& result,
                                    const RunMeta& meta) {
  ordered_json root;
  root["schema_version"] = "1";
  ordered_json header = meta_json(meta, network);
  root["network"] = header["network"];
  root["state"] = state.to_string();
  root["reliability"] = result.value;
  root["reliability_7dp"] = format_reliability(result.value);
  root["states_evaluated"] = result.states_evaluated;
  root["connected_states"] = result.connected_states;
  return root.dump(2) + "\n";
}

std::string reliability_report_table(const ArcState& state,
                                     const ReliabilityResult& result) {
  std::string out;
  out += "state: " + state.to_string() + "\n";
  out += "reliability: " + format_reliability(result.value) + "\n";
  out += "states evaluated: " + std::to_string(result.states_evaluated) + "\n";
  out += "connected states: " + std::to_string(result.connected_states) + "\n";
  return out;
}

namespace {

ordered_json path_json(const Network& network, const MinPath& path) {
  ordered_json p;
  p["arcs"] = path.arcs;
  p["nodes"] = path.nodes;
  p["cost"] = path_cost(network, path);
  p["prob"] = path_prob(network, path);
  p["state"] = path_state(network, path).to_string();
  return p;
}

std::string nodes_to_string(const std::vector<int>& nodes) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0) out += "-";
    out += std::to_string(nodes[i]);
  }
  return out;
}

}  // namespace

std::string minpaths_report_json(const Network& network,
                                 const std::vector<MinPath>& paths,
                                 const RunMeta& meta, double per_path_budget) {
  ordered_json root;
  root["schema_version"] = "1";
  ordered_json header = meta_json(meta, network);
  root["network"] = header["network"];
  root["count"] = paths.size();
  if (per_path_budget >= 0.0) root["budget_per_path"] = per_path_budget;
  ordered_json list = ordered_json::array();
  for (const MinPath& p : paths) {
    ordered_json j = path_json(network, p);
    if (per_path_budget >= 0.0) {
      j["feasible"] = path_cost(network, p) <= per_path_budget;
    }
    list.push_back(std::move(j));
  }
  root["paths"] = std::move(list);
  return root.dump(2) + "\n";
}

std::string minpaths_report_table(const Network& network,
                                  const std::vector<MinPath>& paths,
                                  double per_path_budget) {
  std::string out = std::to_string(paths.size()) + " minimal paths\n";
  char line[256];
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const MinPath& p = paths[i];
    const double cost = path_cost(network, p);
    std::string mark;
    if (per_path_budget >= 0.0) {
      mark = cost <= per_path_budget ? "  feasible" : "  discarded";
    }
    std::snprintf(line, sizeof(line),
                  "  %4zu  %-18s  arcs %-14s  C=%-8s  Pr=%s%s", i + 1,
                  nodes_to_string(p.nodes).c_str(),
                  tuple_to_string(p.arcs).c_str(), format_cost(cost).c_str(),
                  format_reliability(path_prob(network, p)).c_str(),
                  mark.c_str());
    append_line(out, line);
  }
  return out;
}

std::string mp_budget_report_json(const Network& network,
                                  const MpBudgetReport& report,
                                  const RunMeta& meta) {
  ordered_json root;
  root["schema_version"] = "1";
  ordered_json header = meta_json(meta, network);
  root["network"] = header["network"];
  root["problem"] = header["problem"];
  root["path_count"] = report.all_paths.size();
  root["feasible_count"] = report.feasible.size();
  ordered_json list = ordered_json::array();
  for (std::size_t i = 0; i < report.all_paths.size(); ++i) {
    ordered_json p = path_json(network, report.all_paths[i]);
    p["feasible"] =
        std::find(report.feasible.begin(), report.feasible.end(), i) !=
        report.feasible.end();
    list.push_back(std::move(p));
  }
  root["paths"] = std::move(list);
  root["reliability"] = report.reliability;
  root["reliability_7dp"] = format_reliability(report.reliability);
  root["union_build_cost"] = report.union_build_cost;
  root["union_build_cost_exceeds_budget"] =
      report.union_build_cost > meta.budget;
  return root.dump(2) + "\n";
}

std::string mp_budget_report_table(const Network& /*network*/,
                                   const MpBudgetReport& report,
                                   double per_path_budget) {
  std::string out;
  out += "minimal paths: " + std::to_string(report.all_paths.size()) +
         ", feasible with per-path budget " + format_cost(per_path_budget) +
         ": " + std::to_string(report.feasible.size()) + "\n";
  char line[256];
  for (std::size_t i = 0; i < report.all_paths.size(); ++i) {
    const MinPath& p = report.all_paths[i];
    const bool feasible =
        std::find(report.feasible.begin(), report.feasible.end(), i) !=
        report.feasible.end();
    std::snprintf(line, sizeof(line),
                  "  %4zu  %-18s  arcs %-14s  C=%-8s  Pr=%s  %s\n", i + 1,
                  nodes_to_string(p.nodes).c_str(),
                  tuple_to_string(p.arcs).c_str(),
                  format_cost(report.per_path_cost[i]).c_str(),
                  format_reliability(report.per_path_prob[i]).c_str(),
                  feasible ? "feasible" : "discarded");
    out += line;
  }
  out += "reliability (union of feasible paths): " +
         format_reliability(report.reliability) + "\n";
  if (!report.feasible.empty() &&
      report.union_build_cost > per_path_budget) {
    out += "warning: building every feasible path costs " +
           format_cost(report.union_build_cost) +
           ", which exceeds the per-path budget " +
           format_cost(per_path_budget) +
           "; the per-path model ignores the total build cost\n";
  }
  return out;
}

std::string bench_csv_header() {
  return "network,budget,algorithm,status,best_state,reliability,cost,m_max,"
         "m_min,vectors_examined,feasible_found,wall_seconds\n";
}

std::string bench_csv_row(const std::string& network_path, double budget,
                          const std::string& algorithm,
                          const SolveReport& report) {
  std::string out;
  out += network_path + ",";
  out += format_cost(budget) + ",";
  out += algorithm + ",";
  out += report.best ? "solved," : "infeasible,";
  out += (report.best ? report.best->to_string() : std::string("")) + ",";
  out += (report.best ? format_reliability(report.best_reliability)
                      : std::string("")) +
         ",";
  out += (report.best ? format_cost(report.best_cost) : std::string("")) + ",";
  out += std::to_string(report.m_max) + ",";
  out += std::to_string(report.m_min) + ",";
  out += std::to_string(report.vectors_examined) + ",";
  out += std::to_string(report.feasible_found) + ",";
  out += printf_format("%.5f", report.wall_time.count());
  return out + "\n";
}

}  // namespace relnet::io
