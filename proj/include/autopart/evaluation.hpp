// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "autopart/model.hpp"

namespace autopart {

/// Hard-constraint violation classes, in the order used for sorting results.
enum class ViolationKind : unsigned char {
  CapabilityMissing,
  RamOverflow,
  CpuOverflow,
  IntegrityViolation,
  NoRoute,
  BandwidthOverflow,
  LatencyExceeded,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string subject;  // component id, ECU id, or "from->to" for links/edges
  std::string detail;   // measured vs. allowed quantities where applicable

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct EcuUse {
  double ram_mb = 0.0;
  double cpu_units = 0.0;

  friend bool operator==(const EcuUse&, const EcuUse&) = default;
};

struct UtilizationReport {
  std::map<std::string, EcuUse> ecu;          // keyed by ECU id
  std::map<std::string, double> link;         // used kbps, keyed "from->to"
  std::map<std::string, double> edge_latency; // routed ms per software edge "from->to"

  friend bool operator==(const UtilizationReport&, const UtilizationReport&) = default;
};

/// Weights of the four headroom terms; nonnegative, must sum to 1.
struct ScoreWeights {
  double w_mem = 0.25;
  double w_cpu = 0.25;
  double w_bw = 0.25;
  double w_lat = 0.25;

  friend bool operator==(const ScoreWeights&, const ScoreWeights&) = default;
};

/// Throws SchemaError unless all weights are nonnegative and sum to 1 within 1e-9.
void validate_weights(const ScoreWeights& weights);

/// Outcome of scoring a deployment. score >= 0 exactly when violations is
/// empty; an infeasible mapping scores -(number of violations).
struct EvaluationResult {
  int score = 0;
  std::vector<Violation> violations;
  UtilizationReport utilization;

  bool feasible() const noexcept { return violations.empty(); }
};

/// All hard-constraint violations of mapping m, sorted by kind, then subject,
/// then detail. Empty result means the deployment is feasible.
///
/// Checks, in order: capability locality, per-ECU RAM/CPU capacity, component
/// criticality vs. device integrity, route existence for remote edges, per-link
/// bandwidth capacity, and per-edge latency bounds. Co-located edges consume
/// no bandwidth and have latency 0.
///
/// Throws IncompleteMapping if some component has no image, UnknownId if the
/// mapping names an undeclared component or ECU.
std::vector<Violation> check_feasibility(const HardwareModel& hw, const SoftwareModel& sw,
                                         const DeploymentMapping& m);

/// Scores a deployment. Feasible mappings score
///   round(1000 * (w_mem*T_mem + w_cpu*T_cpu + w_bw*T_bw + w_lat*T_lat))
/// with half rounded away from zero, where each T is the bottleneck headroom
/// in [0,1]: the minimum over finite-capacity ECUs/links (resp. latency-bounded
/// edges) of 1 - used/capacity, or 1 when nothing is finite. Infeasible
/// mappings score -(violation count).
EvaluationResult evaluate(const HardwareModel& hw, const SoftwareModel& sw,
                          const DeploymentMapping& m, const ScoreWeights& weights = {});

/// Per-ECU, per-link, and per-edge usage, reported as-is even when some
/// capacity is overflowed. Unroutable edges have no latency entry.
UtilizationReport utilization_report(const HardwareModel& hw, const SoftwareModel& sw,
                                     const DeploymentMapping& m);

}  // namespace autopart
