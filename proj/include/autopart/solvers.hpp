// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "autopart/evaluation.hpp"
#include "autopart/model.hpp"

namespace autopart {

/// Score reported when no feasible mapping was found (or exists).
inline constexpr int kNoFeasibleScore = -1;

struct SolveRequest {
  HardwareModel hw;
  SoftwareModel sw;
  ScoreWeights weights;
  std::map<std::string, std::string> pins;  // fixed part of the mapping
  std::uint64_t seed = 0;                   // local search only
  int restarts = 10;                        // local search only, positive
  int max_iters = 1000;                     // moves per restart, positive
  std::uint64_t exhaustive_cap = 10'000'000;  // candidate limit for solve_exhaustive
};

struct SolveResult {
  std::optional<DeploymentMapping> mapping;
  int score = kNoFeasibleScore;
  bool feasible = false;
  std::uint64_t explored = 0;  // partial or full assignments examined
};

/// Enumerates every completion of the pins (components by id, ECUs by id) and
/// returns the maximum-score feasible mapping, first-found among ties; this is
/// the correctness oracle for the other solvers. Runs the enumeration on all
/// OpenMP threads when available; the result is identical to the serial scan.
///
/// Throws InstanceTooLarge when the candidate count exceeds req.exhaustive_cap,
/// UnknownId for undeclared pin ids.
SolveResult solve_exhaustive(const SolveRequest& req);

/// Single-threaded reference implementation of solve_exhaustive, kept for
/// testing and benchmarking the parallel scan against.
SolveResult solve_exhaustive_serial(const SolveRequest& req);

/// Depth-first search over partial assignments with two admissible prunes:
/// a partial assignment that already violates a constraint among its assigned
/// components is abandoned, and so is one whose optimistic bound (the score
/// formula over currently assigned demands and fully-assigned edges) cannot
/// beat the incumbent. Scores always equal solve_exhaustive's; the returned
/// mapping may be a different equal-score optimum.
SolveResult solve_branch_and_bound(const SolveRequest& req);

/// Seeded multi-restart steepest-ascent hill climbing over the penalized
/// objective f(m) = score(m) when feasible, -1000 * violations(m) otherwise.
/// Neighborhood: reassign one unpinned component to one other ECU. Restarts
/// run on all OpenMP threads when available; results are merged
/// deterministically, so output is byte-identical for a fixed request.
SolveResult solve_local_search(const SolveRequest& req);

/// Single-threaded reference implementation of solve_local_search.
SolveResult solve_local_search_serial(const SolveRequest& req);

}  // namespace autopart
