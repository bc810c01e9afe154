// SPDX-License-Identifier: Apache-2.0
#include "autopart/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "eval_core.hpp"

namespace autopart {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::CapabilityMissing: return "CapabilityMissing";
    case ViolationKind::RamOverflow: return "RamOverflow";
    case ViolationKind::CpuOverflow: return "CpuOverflow";
    case ViolationKind::IntegrityViolation: return "IntegrityViolation";
    case ViolationKind::NoRoute: return "NoRoute";
    case ViolationKind::BandwidthOverflow: return "BandwidthOverflow";
    case ViolationKind::LatencyExceeded: return "LatencyExceeded";
  }
  return "Violation";
}

void validate_weights(const ScoreWeights& weights) {
  for (double w : {weights.w_mem, weights.w_cpu, weights.w_bw, weights.w_lat}) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::SchemaError, "weights", "score weights must be nonnegative");
    }
  }
  const double sum = weights.w_mem + weights.w_cpu + weights.w_bw + weights.w_lat;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorKind::SchemaError, "weights",
                "score weights must sum to 1 (got " + detail::format_number(sum) + ")");
  }
}

namespace {

void sort_violations(std::vector<Violation>& violations) {
  std::sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.kind, a.subject, a.detail) < std::tie(b.kind, b.subject, b.detail);
  });
}

UtilizationReport report_from_scratch(const detail::Instance& inst,
                                      const detail::Scratch& scratch) {
  UtilizationReport report;
  for (int e = 0; e < inst.ecu_count(); ++e) {
    report.ecu[inst.ecu_ids[e]] = EcuUse{scratch.ram_used[e], scratch.cpu_used[e]};
  }
  for (size_t li = 0; li < inst.links.size(); ++li) {
    report.link[inst.links[li].key] = scratch.bw_used[li];
  }
  for (size_t g = 0; g < inst.edges.size(); ++g) {
    const auto state = scratch.edge_state[g];
    if (state == detail::Scratch::kRouted || state == detail::Scratch::kColocated) {
      report.edge_latency[inst.edges[g].key] = scratch.edge_latency[g];
    }
  }
  return report;
}

}  // namespace

std::vector<Violation> check_feasibility(const HardwareModel& hw, const SoftwareModel& sw,
                                         const DeploymentMapping& m) {
  const auto inst = detail::Instance::build(hw, sw);
  const auto assignment = detail::assignment_from_mapping(inst, m);
  detail::Scratch scratch;
  std::vector<Violation> violations;
  detail::eval_assignment(inst, assignment, ScoreWeights{}, scratch, &violations);
  sort_violations(violations);
  return violations;
}

EvaluationResult evaluate(const HardwareModel& hw, const SoftwareModel& sw,
                          const DeploymentMapping& m, const ScoreWeights& weights) {
  validate_weights(weights);
  const auto inst = detail::Instance::build(hw, sw);
  const auto assignment = detail::assignment_from_mapping(inst, m);
  detail::Scratch scratch;
  EvaluationResult result;
  const auto outcome =
      detail::eval_assignment(inst, assignment, weights, scratch, &result.violations);
  sort_violations(result.violations);
  result.score = outcome.score;
  result.utilization = report_from_scratch(inst, scratch);
  return result;
}

UtilizationReport utilization_report(const HardwareModel& hw, const SoftwareModel& sw,
                                     const DeploymentMapping& m) {
  const auto inst = detail::Instance::build(hw, sw);
  const auto assignment = detail::assignment_from_mapping(inst, m);
  detail::Scratch scratch;
  detail::eval_assignment(inst, assignment, ScoreWeights{}, scratch, nullptr);
  return report_from_scratch(inst, scratch);
}

}  // namespace autopart
