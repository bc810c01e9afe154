// SPDX-License-Identifier: Apache-2.0
//
// Indexed view of a (hardware, software) pair plus the constraint/score walk
// shared by the public evaluation API and the solver inner loops. Internal
// header; lives in src/ on purpose.
#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autopart/evaluation.hpp"
#include "autopart/model.hpp"

namespace autopart::detail {

inline constexpr int kUnassigned = -1;

/// Id-sorted, integer-indexed copy of the two models with an all-pairs route
/// table. Built once per solve; immutable afterwards, safe to share across
/// worker threads.
struct Instance {
  std::vector<std::string> ecu_ids;   // ascending
  std::vector<std::string> comp_ids;  // ascending

  std::vector<Quantity> ecu_ram;
  std::vector<Quantity> ecu_cpu;
  std::vector<unsigned char> ecu_integrity;
  std::vector<std::vector<int>> ecu_caps;  // interned capability ids, sorted

  std::vector<double> comp_ram;
  std::vector<double> comp_cpu;
  std::vector<unsigned char> comp_crit;
  std::vector<std::vector<int>> comp_requires;  // interned, sorted

  std::vector<std::string> cap_names;  // intern table

  struct LinkInfo {
    int from, to;
    Quantity bandwidth;
    double latency;
    std::string key;  // "from->to"
  };
  std::vector<LinkInfo> links;

  struct EdgeInfo {
    int from, to;
    double bandwidth;
    Quantity max_latency;
    std::string key;  // "from->to"
  };
  std::vector<EdgeInfo> edges;

  struct RouteEntry {
    bool reachable = false;
    double latency = 0.0;
    std::vector<int> link_indices;
  };
  std::vector<RouteEntry> routes;  // row-major [src * ecu_count + dst]

  int ecu_count() const noexcept { return static_cast<int>(ecu_ids.size()); }
  int comp_count() const noexcept { return static_cast<int>(comp_ids.size()); }
  const RouteEntry& route(int src, int dst) const { return routes[src * ecu_ids.size() + dst]; }

  int ecu_index(std::string_view id) const noexcept;   // -1 if absent
  int comp_index(std::string_view id) const noexcept;  // -1 if absent

  static Instance build(const HardwareModel& hw, const SoftwareModel& sw);
};

/// Reusable buffers for eval_assignment; one per worker thread.
struct Scratch {
  std::vector<double> ram_used;
  std::vector<double> cpu_used;
  std::vector<double> bw_used;
  enum EdgeState : signed char { kSkipped = 0, kColocated, kRouted, kUnroutable };
  std::vector<signed char> edge_state;
  std::vector<double> edge_latency;
};

struct Outcome {
  int violations = 0;
  int score = 0;  // -violations when infeasible, otherwise the rounded formula
  double t_mem = 1.0, t_cpu = 1.0, t_bw = 1.0, t_lat = 1.0;

  bool feasible() const noexcept { return violations == 0; }
};

/// Constraint and score walk over an assignment vector (ecu index per
/// component, kUnassigned allowed). Unassigned components contribute no
/// demand and edges count only when both endpoints are assigned, so a total
/// assignment yields the published evaluation semantics and a partial one
/// yields the branch-and-bound optimistic bound: every headroom term is
/// non-increasing as the assignment is extended.
///
/// When out_violations is non-null it receives the (unsorted) violation list.
Outcome eval_assignment(const Instance& inst, std::span<const int> ecu_of_comp,
                        const ScoreWeights& weights, Scratch& scratch,
                        std::vector<Violation>* out_violations = nullptr);

/// Converts a mapping into an assignment vector over inst's component order.
/// Enforces totality (IncompleteMapping) and id validity (UnknownId).
std::vector<int> assignment_from_mapping(const Instance& inst, const DeploymentMapping& m);

/// Inverse of assignment_from_mapping for fully assigned vectors.
DeploymentMapping mapping_from_assignment(const Instance& inst, std::span<const int> ecu_of_comp);

std::string format_number(double v);

}  // namespace autopart::detail
