#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "relnet/io.hpp"

using namespace relnet;
using namespace relnet::testing;

namespace {

std::string doc_text(const std::string& body) {
  return std::string("{\"schema_version\":\"1\",\"node_count\":2,"
                     "\"source\":1,\"sink\":2,\"arcs\":[") +
         body + "]}";
}

}  // namespace

TEST_CASE("bridge fixture parses to the expected model") {
  const io::NetworkDocument doc =
      io::document_from_file(fixture_path("bridge.json"));
  CHECK(doc.name == "bridge");
  const Network net = io::to_network(doc);
  CHECK(net.node_count() == 4);
  CHECK(net.arc_count() == 5);
  CHECK(net.source() == 1);
  CHECK(net.sink() == 4);
  CHECK_FALSE(net.arc(3).oriented);
  CHECK(net.arc(3).tail == 2);
  CHECK(net.arc(3).head == 3);
  CHECK(net.arc(5).cost == 10);
  CHECK(net.arc(1).prob == 0.95);
}

TEST_CASE("water fixture parses to the expected model") {
  const Network& net = water();
  CHECK(net.node_count() == 15);
  CHECK(net.arc_count() == 23);
  CHECK(net.sink() == 15);
  CHECK(net.arc(1).tail == 1);
  CHECK(net.arc(1).head == 2);
  CHECK(net.arc(1).prob == 0.8012);
  CHECK(net.arc(1).cost == 69);
  CHECK(net.arc(23).tail == 14);
  CHECK(net.arc(23).head == 15);
  for (const Arc& a : net.arcs()) CHECK(a.oriented);
}

TEST_CASE("minimal two-node document") {
  const io::NetworkDocument doc = io::document_from_json(
      doc_text("{\"id\":1,\"from\":1,\"to\":2,\"prob\":0.5,\"cost\":1}"));
  const Network net = io::to_network(doc);
  CHECK(net.arc_count() == 1);
  CHECK(net.arc(1).oriented);  // defaults to oriented
}

TEST_CASE("parse diagnostics carry the failing field") {
  using io::ParseError;
  const auto message_of = [](const std::string& text) {
    try {
      io::to_network(io::document_from_json(text));
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };

  SUBCASE("duplicate arc id") {
    const std::string msg = message_of(
        doc_text("{\"id\":1,\"from\":1,\"to\":2,\"prob\":0.5,\"cost\":1},"
                 "{\"id\":1,\"from\":2,\"to\":1,\"prob\":0.5,\"cost\":1}"));
    CHECK(msg.find("arcs[1].id") != std::string::npos);
    CHECK(msg.find("duplicate") != std::string::npos);
  }
  SUBCASE("probability outside (0,1]") {
    CHECK(message_of(
              doc_text("{\"id\":1,\"from\":1,\"to\":2,\"prob\":0.0,\"cost\":1}"))
              .find("arcs[0].prob") != std::string::npos);
    CHECK(message_of(
              doc_text("{\"id\":1,\"from\":1,\"to\":2,\"prob\":1.5,\"cost\":1}"))
              .find("arcs[0].prob") != std::string::npos);
  }
  SUBCASE("negative cost") {
    CHECK(message_of(doc_text(
                         "{\"id\":1,\"from\":1,\"to\":2,\"prob\":0.5,\"cost\":-2}"))
              .find("arcs[0].cost") != std::string::npos);
  }
  SUBCASE("unknown node") {
    CHECK(message_of(doc_text(
                         "{\"id\":1,\"from\":1,\"to\":7,\"prob\":0.5,\"cost\":1}"))
              .find("arcs[0].to") != std::string::npos);
  }
  SUBCASE("sparse arc ids") {
    CHECK(message_of(doc_text(
                         "{\"id\":2,\"from\":1,\"to\":2,\"prob\":0.5,\"cost\":1}"))
              .find("id") != std::string::npos);
  }
  SUBCASE("missing field") {
    CHECK(message_of(doc_text("{\"id\":1,\"from\":1,\"to\":2,\"prob\":0.5}"))
              .find("cost") != std::string::npos);
  }
  SUBCASE("malformed json") {
    CHECK_THROWS_AS(io::document_from_json("{"), ParseError);
  }
  SUBCASE("unreadable file") {
    CHECK_THROWS_AS(io::document_from_file("/nonexistent/net.json"),
                    ParseError);
  }
}

TEST_CASE("documents round-trip through serialization") {
  for (const std::string name :
       {"bridge.json", "bridge-a.json", "bridge-b.json", "bridge-c.json",
        "water.json"}) {
    const io::NetworkDocument doc =
        io::document_from_file(fixture_path(name));
    const std::string once = io::document_to_json(doc);
    const io::NetworkDocument reparsed = io::document_from_json(once);
    CHECK(reparsed.node_count == doc.node_count);
    CHECK(reparsed.source == doc.source);
    CHECK(reparsed.sink == doc.sink);
    CHECK(reparsed.name == doc.name);
    REQUIRE(reparsed.arcs.size() == doc.arcs.size());
    for (std::size_t i = 0; i < doc.arcs.size(); ++i) {
      CHECK(reparsed.arcs[i].index == doc.arcs[i].index);
      CHECK(reparsed.arcs[i].tail == doc.arcs[i].tail);
      CHECK(reparsed.arcs[i].head == doc.arcs[i].head);
      CHECK(reparsed.arcs[i].oriented == doc.arcs[i].oriented);
      CHECK(reparsed.arcs[i].prob == doc.arcs[i].prob);
      CHECK(reparsed.arcs[i].cost == doc.arcs[i].cost);
    }
    // Serialization is a fixpoint after one pass.
    CHECK(io::document_to_json(reparsed) == once);
  }
}

TEST_CASE("arc arrays may arrive in any order") {
  const io::NetworkDocument doc = io::document_from_json(
      doc_text("{\"id\":2,\"from\":2,\"to\":1,\"prob\":0.5,\"cost\":1},"
               "{\"id\":1,\"from\":1,\"to\":2,\"prob\":0.5,\"cost\":1}"));
  CHECK(doc.arcs[0].index == 1);
  CHECK(doc.arcs[0].tail == 1);
}

TEST_CASE("fixed-format numbers") {
  CHECK(io::format_reliability(0.922) == "0.9220000");
  CHECK(io::format_reliability(0.9417625) == "0.9417625");
  CHECK(io::format_cost(23.0) == "23");
  CHECK(io::format_cost(23.25) == "23.25");
}

TEST_CASE("solve report json is reproducible") {
  const SolveReport report = solve_stepwise(BudgetProblem(bridge(), 26));
  io::RunMeta meta;
  meta.network_path = "bridge.json";
  meta.network_name = "bridge";
  meta.algorithm = "stepwise";
  meta.budget = 26;
  const std::string a = io::solve_report_json(bridge(), report, meta);
  const std::string b = io::solve_report_json(bridge(), report, meta);
  CHECK(a == b);
  CHECK(a.find("\"status\": \"solved\"") != std::string::npos);
  CHECK(a.find("\"state\": \"11011\"") != std::string::npos);
  CHECK(a.find("\"reliability_7dp\": \"0.9220000\"") != std::string::npos);
  CHECK(a.find("wall_seconds") == std::string::npos);
}

TEST_CASE("fnv1a64 matches known vectors") {
  CHECK(io::fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(io::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}
