#pragma once

#include <string>

#include "relnet/io.hpp"

namespace relnet::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(RELNET_FIXTURE_DIR) + "/" + name;
}

inline Network load_fixture(const std::string& name) {
  return io::to_network(io::document_from_file(fixture_path(name)));
}

inline const Network& bridge() {
  static const Network net = load_fixture("bridge.json");
  return net;
}

inline const Network& bridge_a() {
  static const Network net = load_fixture("bridge-a.json");
  return net;
}

inline const Network& bridge_b() {
  static const Network net = load_fixture("bridge-b.json");
  return net;
}

inline const Network& bridge_c() {
  static const Network net = load_fixture("bridge-c.json");
  return net;
}

inline const Network& water() {
  static const Network net = load_fixture("water.json");
  return net;
}

}  // namespace relnet::testing
