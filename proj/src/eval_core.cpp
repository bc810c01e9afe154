// SPDX-License-Identifier: Apache-2.0
#include "eval_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "autopart/routing.hpp"

namespace autopart::detail {

std::string format_number(double v) {
  char buf[64];
  if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
  } else {
    std::snprintf(buf, sizeof(buf), "%g", v);
  }
  return buf;
}

int Instance::ecu_index(std::string_view id) const noexcept {
  auto it = std::lower_bound(ecu_ids.begin(), ecu_ids.end(), id);
  if (it == ecu_ids.end() || *it != id) return -1;
  return static_cast<int>(it - ecu_ids.begin());
}

int Instance::comp_index(std::string_view id) const noexcept {
  auto it = std::lower_bound(comp_ids.begin(), comp_ids.end(), id);
  if (it == comp_ids.end() || *it != id) return -1;
  return static_cast<int>(it - comp_ids.begin());
}

Instance Instance::build(const HardwareModel& hw, const SoftwareModel& sw) {
  Instance inst;
  for (const auto& ecu : hw.ecus()) inst.ecu_ids.push_back(ecu.id);
  std::sort(inst.ecu_ids.begin(), inst.ecu_ids.end());
  for (const auto& comp : sw.components()) inst.comp_ids.push_back(comp.id);
  std::sort(inst.comp_ids.begin(), inst.comp_ids.end());

  const int E = inst.ecu_count();
  const int C = inst.comp_count();

  std::map<std::string, int> interned;
  auto intern = [&](const std::vector<std::string>& names) {
    std::vector<int> ids;
    ids.reserve(names.size());
    for (const auto& name : names) {
      auto it = interned.emplace(name, static_cast<int>(interned.size())).first;
      ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
  };

  inst.ecu_ram.resize(E);
  inst.ecu_cpu.resize(E);
  inst.ecu_integrity.resize(E);
  inst.ecu_caps.resize(E);
  for (const auto& ecu : hw.ecus()) {
    const int i = inst.ecu_index(ecu.id);
    inst.ecu_ram[i] = ecu.ram_mb;
    inst.ecu_cpu[i] = ecu.cpu_units;
    inst.ecu_integrity[i] = static_cast<unsigned char>(ecu.integrity);
    inst.ecu_caps[i] = intern(ecu.capabilities);
  }

  inst.comp_ram.resize(C);
  inst.comp_cpu.resize(C);
  inst.comp_crit.resize(C);
  inst.comp_requires.resize(C);
  for (const auto& comp : sw.components()) {
    const int i = inst.comp_index(comp.id);
    inst.comp_ram[i] = comp.ram_mb;
    inst.comp_cpu[i] = comp.cpu_units;
    inst.comp_crit[i] = static_cast<unsigned char>(comp.criticality);
    inst.comp_requires[i] = intern(comp.requires_caps);
  }

  inst.cap_names.resize(interned.size());
  for (const auto& [name, id] : interned) inst.cap_names[id] = name;

  std::map<std::pair<int, int>, int> link_index;
  for (const auto& link : hw.links()) {
    LinkInfo info;
    info.from = inst.ecu_index(link.from);
    info.to = inst.ecu_index(link.to);
    info.bandwidth = link.bandwidth_kbps;
    info.latency = link.latency_ms;
    info.key = link.from + "->" + link.to;
    link_index[{info.from, info.to}] = static_cast<int>(inst.links.size());
    inst.links.push_back(std::move(info));
  }

  for (const auto& edge : sw.edges()) {
    EdgeInfo info;
    info.from = inst.comp_index(edge.from);
    info.to = inst.comp_index(edge.to);
    info.bandwidth = edge.bandwidth_kbps;
    info.max_latency = edge.max_latency_ms;
    info.key = edge.from + "->" + edge.to;
    inst.edges.push_back(std::move(info));
  }

  inst.routes.resize(static_cast<size_t>(E) * E);
  for (int s = 0; s < E; ++s) {
    for (int d = 0; d < E; ++d) {
      if (s == d) {
        inst.routes[s * E + d].reachable = true;
        continue;
      }
      auto found = try_route(hw, inst.ecu_ids[s], inst.ecu_ids[d]);
      if (!found) continue;
      RouteEntry& entry = inst.routes[s * E + d];
      entry.reachable = true;
      entry.latency = found->total_latency_ms;
      for (const auto& hop : found->hops) {
        entry.link_indices.push_back(
            link_index.at({inst.ecu_index(hop.from), inst.ecu_index(hop.to)}));
      }
    }
  }
  return inst;
}

namespace {

// Bottleneck headroom of one finite capacity. A zero capacity with zero use
// constrains nothing and counts as full headroom.
double headroom(double used, double capacity) {
  if (capacity == 0.0) return used > 0.0 ? 0.0 : 1.0;
  return 1.0 - used / capacity;
}

}  // namespace

Outcome eval_assignment(const Instance& inst, std::span<const int> ecu_of_comp,
                        const ScoreWeights& weights, Scratch& scratch,
                        std::vector<Violation>* out_violations) {
  const int E = inst.ecu_count();
  const int C = inst.comp_count();
  const int L = static_cast<int>(inst.links.size());
  const int G = static_cast<int>(inst.edges.size());

  scratch.ram_used.assign(E, 0.0);
  scratch.cpu_used.assign(E, 0.0);
  scratch.bw_used.assign(L, 0.0);
  scratch.edge_state.assign(G, Scratch::kSkipped);
  scratch.edge_latency.assign(G, 0.0);

  for (int c = 0; c < C; ++c) {
    const int e = ecu_of_comp[c];
    if (e == kUnassigned) continue;
    scratch.ram_used[e] += inst.comp_ram[c];
    scratch.cpu_used[e] += inst.comp_cpu[c];
  }

  for (int g = 0; g < G; ++g) {
    const Instance::EdgeInfo& edge = inst.edges[g];
    const int from = ecu_of_comp[edge.from];
    const int to = ecu_of_comp[edge.to];
    if (from == kUnassigned || to == kUnassigned) continue;
    if (from == to) {
      scratch.edge_state[g] = Scratch::kColocated;
      continue;
    }
    const Instance::RouteEntry& route = inst.route(from, to);
    if (!route.reachable) {
      scratch.edge_state[g] = Scratch::kUnroutable;
      continue;
    }
    scratch.edge_state[g] = Scratch::kRouted;
    scratch.edge_latency[g] = route.latency;
    for (int li : route.link_indices) scratch.bw_used[li] += edge.bandwidth;
  }

  Outcome out;
  auto report = [&](ViolationKind kind, const std::string& subject, std::string detail) {
    ++out.violations;
    if (out_violations) out_violations->push_back({kind, subject, std::move(detail)});
  };

  // 1. capability locality
  for (int c = 0; c < C; ++c) {
    const int e = ecu_of_comp[c];
    if (e == kUnassigned) continue;
    for (int cap : inst.comp_requires[c]) {
      if (!std::binary_search(inst.ecu_caps[e].begin(), inst.ecu_caps[e].end(), cap)) {
        report(ViolationKind::CapabilityMissing, inst.comp_ids[c],
               "requires '" + inst.cap_names[cap] + "', not provided by '" + inst.ecu_ids[e] + "'");
      }
    }
  }

  // 2. RAM / CPU capacity
  for (int e = 0; e < E; ++e) {
    if (inst.ecu_ram[e].is_finite() && scratch.ram_used[e] > inst.ecu_ram[e].value) {
      report(ViolationKind::RamOverflow, inst.ecu_ids[e],
             "used " + format_number(scratch.ram_used[e]) + " MB > capacity " +
                 format_number(inst.ecu_ram[e].value) + " MB");
    }
    if (inst.ecu_cpu[e].is_finite() && scratch.cpu_used[e] > inst.ecu_cpu[e].value) {
      report(ViolationKind::CpuOverflow, inst.ecu_ids[e],
             "used " + format_number(scratch.cpu_used[e]) + " > capacity " +
                 format_number(inst.ecu_cpu[e].value));
    }
  }

  // 3. criticality vs. integrity
  for (int c = 0; c < C; ++c) {
    const int e = ecu_of_comp[c];
    if (e == kUnassigned) continue;
    if (inst.comp_crit[c] > inst.ecu_integrity[e]) {
      report(ViolationKind::IntegrityViolation, inst.comp_ids[c],
             std::string("criticality ") + to_string(static_cast<Asil>(inst.comp_crit[c])) +
                 " exceeds integrity " + to_string(static_cast<Asil>(inst.ecu_integrity[e])) +
                 " of '" + inst.ecu_ids[e] + "'");
    }
  }

  // 4. route existence
  for (int g = 0; g < G; ++g) {
    if (scratch.edge_state[g] != Scratch::kUnroutable) continue;
    const Instance::EdgeInfo& edge = inst.edges[g];
    report(ViolationKind::NoRoute, edge.key,
           "no route from '" + inst.ecu_ids[ecu_of_comp[edge.from]] + "' to '" +
               inst.ecu_ids[ecu_of_comp[edge.to]] + "'");
  }

  // 5. link bandwidth
  for (int li = 0; li < L; ++li) {
    const Instance::LinkInfo& link = inst.links[li];
    if (link.bandwidth.is_finite() && scratch.bw_used[li] > link.bandwidth.value) {
      report(ViolationKind::BandwidthOverflow, link.key,
             "used " + format_number(scratch.bw_used[li]) + " kbps > capacity " +
                 format_number(link.bandwidth.value) + " kbps");
    }
  }

  // 6. latency bounds
  for (int g = 0; g < G; ++g) {
    const Instance::EdgeInfo& edge = inst.edges[g];
    if (!edge.max_latency.is_finite()) continue;
    if (scratch.edge_state[g] != Scratch::kRouted && scratch.edge_state[g] != Scratch::kColocated)
      continue;
    if (scratch.edge_latency[g] > edge.max_latency.value) {
      report(ViolationKind::LatencyExceeded, edge.key,
             "routed " + format_number(scratch.edge_latency[g]) + " ms > bound " +
                 format_number(edge.max_latency.value) + " ms");
    }
  }

  for (int e = 0; e < E; ++e) {
    if (inst.ecu_ram[e].is_finite())
      out.t_mem = std::min(out.t_mem, headroom(scratch.ram_used[e], inst.ecu_ram[e].value));
    if (inst.ecu_cpu[e].is_finite())
      out.t_cpu = std::min(out.t_cpu, headroom(scratch.cpu_used[e], inst.ecu_cpu[e].value));
  }
  for (int li = 0; li < L; ++li) {
    if (inst.links[li].bandwidth.is_finite())
      out.t_bw = std::min(out.t_bw, headroom(scratch.bw_used[li], inst.links[li].bandwidth.value));
  }
  for (int g = 0; g < G; ++g) {
    const Instance::EdgeInfo& edge = inst.edges[g];
    if (!edge.max_latency.is_finite()) continue;
    if (scratch.edge_state[g] != Scratch::kRouted && scratch.edge_state[g] != Scratch::kColocated)
      continue;
    out.t_lat = std::min(out.t_lat, headroom(scratch.edge_latency[g], edge.max_latency.value));
  }

  if (out.violations > 0) {
    out.score = -out.violations;
  } else {
    const double weighted = weights.w_mem * out.t_mem + weights.w_cpu * out.t_cpu +
                            weights.w_bw * out.t_bw + weights.w_lat * out.t_lat;
    out.score = static_cast<int>(std::llround(1000.0 * weighted));
  }
  return out;
}

std::vector<int> assignment_from_mapping(const Instance& inst, const DeploymentMapping& m) {
  std::vector<int> assignment(inst.comp_count(), kUnassigned);
  for (const auto& [comp, ecu] : m.assignment) {
    const int c = inst.comp_index(comp);
    if (c < 0) {
      throw Error(ErrorKind::UnknownId, comp,
                  "mapping names undeclared component '" + comp + "'");
    }
    const int e = inst.ecu_index(ecu);
    if (e < 0) {
      throw Error(ErrorKind::UnknownId, ecu,
                  "mapping assigns '" + comp + "' to undeclared ECU '" + ecu + "'");
    }
    assignment[c] = e;
  }
  for (int c = 0; c < inst.comp_count(); ++c) {
    if (assignment[c] == kUnassigned) {
      throw Error(ErrorKind::IncompleteMapping, inst.comp_ids[c],
                  "component '" + inst.comp_ids[c] + "' has no assigned ECU");
    }
  }
  return assignment;
}

DeploymentMapping mapping_from_assignment(const Instance& inst, std::span<const int> ecu_of_comp) {
  DeploymentMapping m;
  for (int c = 0; c < inst.comp_count(); ++c) {
    m.assignment.emplace(inst.comp_ids[c], inst.ecu_ids[ecu_of_comp[c]]);
  }
  return m;
}

}  // namespace autopart::detail
