// SPDX-License-Identifier: Apache-2.0
//
// Shared fixtures, seeded random model generators, and brute-force oracles
// used across the test suites. Oracles here are written independently of the
// library's search internals on purpose: plain recursion and exhaustive
// enumeration, checked against the implementations they exercise.
#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "autopart/evaluation.hpp"
#include "autopart/hwsynth.hpp"
#include "autopart/model.hpp"

namespace testsupport {

using namespace autopart;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::string data_file(const std::string& name) {
  return std::string(AUTOPART_DATA_DIR) + "/" + name;
}

// --- gateway fixture: cloud + gateway + two controllers, five components ---

inline HardwareModel gateway_hw() {
  const auto inf = Quantity::infinite();
  return build_hardware_model(
      {
          {"Cloud", Tier::Cloud, inf, inf, {}, Asil::QM},
          {"GW", Tier::Embedded, Quantity::finite(1024), inf, {}, Asil::QM},
          {"C1", Tier::Microcontroller, Quantity::finite(4), inf, {"Sen"}, Asil::QM},
          {"C2", Tier::Microcontroller, Quantity::finite(2), inf, {"Act"}, Asil::QM},
      },
      {
          {"Cloud", "GW", inf, 0},
          {"GW", "C1", inf, 0},
          {"GW", "C2", inf, 0},
          {"GW", "Cloud", inf, 0},
          {"C1", "GW", inf, 0},
          {"C2", "GW", inf, 0},
      });
}

inline SoftwareModel gateway_sw() {
  const auto inf = Quantity::infinite();
  return build_software_model(
      {
          {"CtrlS", 0, 0, {"Sen"}, Asil::QM},
          {"CtrlA", 0, 0, {"Act"}, Asil::QM},
          {"Comp1", 0, 0, {}, Asil::QM},
          {"Comp2", 0, 0, {}, Asil::QM},
          {"Comp3", 0, 0, {}, Asil::QM},
      },
      {
          {"CtrlS", "Comp1", 0, inf},
          {"Comp1", "CtrlA", 0, inf},
          {"Comp1", "Comp2", 0, inf},
          {"Comp1", "Comp3", 0, inf},
      });
}

inline DeploymentMapping mapping_m1() {
  return DeploymentMapping{{{"CtrlS", "C1"},
                            {"CtrlA", "C2"},
                            {"Comp1", "GW"},
                            {"Comp2", "GW"},
                            {"Comp3", "GW"}}};
}

inline DeploymentMapping mapping_m2() {
  return DeploymentMapping{{{"CtrlS", "C1"},
                            {"CtrlA", "C2"},
                            {"Comp1", "GW"},
                            {"Comp2", "Cloud"},
                            {"Comp3", "Cloud"}}};
}

// --- random model generators ---

inline const std::vector<std::string>& capability_pool() {
  static const std::vector<std::string> pool = {"cam", "gps", "lidar", "radar"};
  return pool;
}

inline bool chance(std::mt19937_64& rng, int percent) {
  return static_cast<int>(rng() % 100) < percent;
}

// Values are multiples of 0.25 so latency/capacity arithmetic is exact.
inline double quarter(std::mt19937_64& rng, int max_quarters) {
  return 0.25 * static_cast<double>(rng() % (max_quarters + 1));
}

inline Asil random_asil(std::mt19937_64& rng, bool bias_high) {
  const int a = static_cast<int>(rng() % 5);
  if (!bias_high) return static_cast<Asil>(a);
  const int b = static_cast<int>(rng() % 5);
  return static_cast<Asil>(a > b ? a : b);
}

// `generous` biases toward feasible instances: unlimited capacities, richer
// capability sets, high integrity, and a guaranteed bidirectional star.
inline HardwareModel gen_hardware(std::mt19937_64& rng, int ecu_count, bool generous = false) {
  std::vector<EcuNode> ecus;
  for (int i = 0; i < ecu_count; ++i) {
    EcuNode ecu;
    ecu.id = "e" + std::to_string(i);
    ecu.tier = static_cast<Tier>(rng() % 3);
    ecu.ram_mb = chance(rng, generous ? 60 : 25) ? Quantity::infinite()
                                                 : Quantity::finite(quarter(rng, 256));
    ecu.cpu_units = chance(rng, generous ? 60 : 25) ? Quantity::infinite()
                                                    : Quantity::finite(quarter(rng, 256));
    for (const auto& cap : capability_pool()) {
      if (chance(rng, generous ? 70 : 40)) ecu.capabilities.push_back(cap);
    }
    ecu.integrity = random_asil(rng, generous);
    ecus.push_back(std::move(ecu));
  }
  std::vector<NetLink> links;
  auto add_link = [&](int i, int j) {
    NetLink link;
    link.from = "e" + std::to_string(i);
    link.to = "e" + std::to_string(j);
    link.bandwidth_kbps = chance(rng, 50) ? Quantity::infinite()
                                          : Quantity::finite(10.0 * (1 + rng() % 100));
    link.latency_ms = quarter(rng, 40);
    links.push_back(std::move(link));
  };
  std::vector<std::vector<bool>> present(ecu_count, std::vector<bool>(ecu_count, false));
  if (generous) {
    for (int i = 1; i < ecu_count; ++i) {
      add_link(0, i);
      add_link(i, 0);
      present[0][i] = present[i][0] = true;
    }
  }
  for (int i = 0; i < ecu_count; ++i) {
    for (int j = 0; j < ecu_count; ++j) {
      if (i == j || present[i][j]) continue;
      if (chance(rng, generous ? 30 : 60)) {
        add_link(i, j);
        present[i][j] = true;
      }
    }
  }
  return build_hardware_model(std::move(ecus), std::move(links));
}

inline SoftwareModel gen_software(std::mt19937_64& rng, int comp_count, bool generous = false) {
  std::vector<SwComponent> comps;
  for (int i = 0; i < comp_count; ++i) {
    SwComponent comp;
    comp.id = "c" + std::to_string(i);
    comp.ram_mb = quarter(rng, generous ? 8 : 16);
    comp.cpu_units = quarter(rng, generous ? 8 : 16);
    for (const auto& cap : capability_pool()) {
      if (chance(rng, generous ? 10 : 15)) comp.requires_caps.push_back(cap);
    }
    comp.criticality = chance(rng, generous ? 90 : 60)
                           ? Asil::QM
                           : static_cast<Asil>(1 + rng() % 4);
    comps.push_back(std::move(comp));
  }
  std::vector<SwEdge> edges;
  for (int i = 0; i < comp_count; ++i) {
    for (int j = 0; j < comp_count; ++j) {
      if (i == j || !chance(rng, 25)) continue;
      SwEdge edge;
      edge.from = "c" + std::to_string(i);
      edge.to = "c" + std::to_string(j);
      edge.bandwidth_kbps = quarter(rng, 40);
      edge.max_latency_ms = chance(rng, generous ? 90 : 70)
                                ? Quantity::infinite()
                                : Quantity::finite(0.25 * (1 + rng() % 80));
      edges.push_back(std::move(edge));
    }
  }
  return build_software_model(std::move(comps), std::move(edges));
}

inline DeploymentMapping gen_mapping(std::mt19937_64& rng, const HardwareModel& hw,
                                     const SoftwareModel& sw) {
  DeploymentMapping m;
  for (const auto& comp : sw.components()) {
    m.assignment[comp.id] = hw.ecus()[rng() % hw.ecus().size()].id;
  }
  return m;
}

inline DeviceCatalog gen_catalog(std::mt19937_64& rng, int template_count) {
  DeviceCatalog catalog;
  for (int i = 0; i < template_count; ++i) {
    DeviceTemplate tmpl;
    tmpl.id = "t" + std::to_string(i);
    tmpl.tier = static_cast<Tier>(rng() % 3);
    tmpl.ram_mb =
        chance(rng, 30) ? Quantity::infinite() : Quantity::finite(4.0 + quarter(rng, 240));
    tmpl.cpu_units =
        chance(rng, 30) ? Quantity::infinite() : Quantity::finite(4.0 + quarter(rng, 240));
    for (const auto& cap : capability_pool()) {
      if (chance(rng, 50)) tmpl.capabilities.push_back(cap);
    }
    tmpl.integrity = random_asil(rng, true);
    tmpl.cost = static_cast<double>(5 + rng() % 96);
    tmpl.gateway_capable = i == 0 || chance(rng, 33);
    catalog.templates.push_back(std::move(tmpl));
  }
  catalog.link_defaults.bandwidth_kbps =
      chance(rng, 50) ? Quantity::infinite() : Quantity::finite(50.0 * (1 + rng() % 20));
  catalog.link_defaults.latency_ms = chance(rng, 60) ? 0.0 : quarter(rng, 20);
  return catalog;
}

// --- brute-force oracles ---

// Calls fn for every total mapping that agrees with pins; components and ECUs
// are visited in ascending id order.
inline void for_each_mapping(const HardwareModel& hw, const SoftwareModel& sw,
                             const std::map<std::string, std::string>& pins,
                             const std::function<void(const DeploymentMapping&)>& fn) {
  std::vector<std::string> comp_ids;
  for (const auto& comp : sw.components()) comp_ids.push_back(comp.id);
  std::sort(comp_ids.begin(), comp_ids.end());
  std::vector<std::string> ecu_ids;
  for (const auto& ecu : hw.ecus()) ecu_ids.push_back(ecu.id);
  std::sort(ecu_ids.begin(), ecu_ids.end());

  DeploymentMapping current;
  std::function<void(size_t)> descend = [&](size_t level) {
    if (level == comp_ids.size()) {
      fn(current);
      return;
    }
    const std::string& comp = comp_ids[level];
    auto pin = pins.find(comp);
    if (pin != pins.end()) {
      current.assignment[comp] = pin->second;
      descend(level + 1);
      return;
    }
    for (const auto& ecu : ecu_ids) {
      current.assignment[comp] = ecu;
      descend(level + 1);
    }
  };
  descend(0);
}

struct OracleBest {
  bool feasible = false;
  int score = 0;
  DeploymentMapping mapping;
  std::uint64_t feasible_count = 0;
  std::uint64_t total = 0;
};

// Exhaustive reference solution via the public evaluate(); first-found wins
// score ties, matching the documented enumeration order.
inline OracleBest oracle_solve(const HardwareModel& hw, const SoftwareModel& sw,
                               const ScoreWeights& weights = {},
                               const std::map<std::string, std::string>& pins = {}) {
  OracleBest best;
  for_each_mapping(hw, sw, pins, [&](const DeploymentMapping& m) {
    ++best.total;
    const EvaluationResult result = evaluate(hw, sw, m, weights);
    if (!result.feasible()) return;
    ++best.feasible_count;
    if (!best.feasible || result.score > best.score) {
      best.feasible = true;
      best.score = result.score;
      best.mapping = m;
    }
  });
  return best;
}

// Minimum (latency, hops, intermediate-id-sequence) over all simple paths,
// found by exhaustive DFS; nullopt when dst is unreachable.
struct PathOracle {
  double latency = 0;
  int hops = 0;
  std::vector<std::string> nodes;  // src..dst inclusive
};

inline std::optional<PathOracle> best_path_by_enumeration(const HardwareModel& hw,
                                                          const std::string& src,
                                                          const std::string& dst) {
  if (src == dst) return PathOracle{0, 0, {src}};
  std::optional<PathOracle> best;
  std::vector<std::string> stack = {src};
  double latency = 0;

  auto intermediate_ids = [](const std::vector<std::string>& nodes) {
    return std::vector<std::string>(nodes.begin() + 1, nodes.end() - 1);
  };
  std::function<void()> dfs = [&]() {
    const std::string& here = stack.back();
    if (here == dst) {
      PathOracle candidate{latency, static_cast<int>(stack.size() - 1), stack};
      if (!best ||
          std::make_tuple(candidate.latency, candidate.hops, intermediate_ids(candidate.nodes)) <
              std::make_tuple(best->latency, best->hops, intermediate_ids(best->nodes))) {
        best = std::move(candidate);
      }
      return;
    }
    for (const auto& link : hw.links()) {
      if (link.from != here) continue;
      if (std::find(stack.begin(), stack.end(), link.to) != stack.end()) continue;
      stack.push_back(link.to);
      latency += link.latency_ms;
      dfs();
      latency -= link.latency_ms;
      stack.pop_back();
    }
  };
  dfs();
  return best;
}

}  // namespace testsupport
