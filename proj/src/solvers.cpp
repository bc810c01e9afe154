// SPDX-License-Identifier: Apache-2.0
#include "autopart/solvers.hpp"

#include <algorithm>
#include <climits>
#include <random>
#include <tuple>

#include "eval_core.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace autopart {

namespace {

using detail::Instance;
using detail::kUnassigned;
using detail::Outcome;
using detail::Scratch;

int worker_count() {
#ifdef _OPENMP
  return std::max(1, omp_get_max_threads());
#else
  return 1;
#endif
}

int worker_id() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

struct Prepared {
  Instance inst;
  std::vector<int> base;        // pins applied, kUnassigned elsewhere
  std::vector<int> free_comps;  // unpinned component indices, id order
};

Prepared prepare(const SolveRequest& req) {
  validate_weights(req.weights);
  Prepared prep;
  prep.inst = Instance::build(req.hw, req.sw);
  prep.base.assign(prep.inst.comp_count(), kUnassigned);
  for (const auto& [comp, ecu] : req.pins) {
    const int c = prep.inst.comp_index(comp);
    if (c < 0) {
      throw Error(ErrorKind::UnknownId, comp, "pin names undeclared component '" + comp + "'");
    }
    const int e = prep.inst.ecu_index(ecu);
    if (e < 0) {
      throw Error(ErrorKind::UnknownId, ecu,
                  "pin assigns '" + comp + "' to undeclared ECU '" + ecu + "'");
    }
    prep.base[c] = e;
  }
  for (int c = 0; c < prep.inst.comp_count(); ++c) {
    if (prep.base[c] == kUnassigned) prep.free_comps.push_back(c);
  }
  return prep;
}

std::uint64_t candidate_count(const Prepared& prep, std::uint64_t cap) {
  unsigned __int128 total = 1;
  const unsigned __int128 ecus = static_cast<unsigned>(prep.inst.ecu_count());
  for (size_t i = 0; i < prep.free_comps.size(); ++i) {
    total *= ecus;
    if (total > cap) {
      throw Error(ErrorKind::InstanceTooLarge, "",
                  "exhaustive enumeration would exceed the candidate cap of " +
                      detail::format_number(static_cast<double>(cap)));
    }
  }
  return static_cast<std::uint64_t>(total);
}

// Digits of `rank` in base E over the free components, first component most
// significant; matches the documented enumeration order.
void decode_rank(const Prepared& prep, std::uint64_t rank, std::vector<int>& assignment) {
  const std::uint64_t ecus = static_cast<std::uint64_t>(prep.inst.ecu_count());
  for (size_t i = prep.free_comps.size(); i-- > 0;) {
    assignment[prep.free_comps[i]] = static_cast<int>(rank % ecus);
    rank /= ecus;
  }
}

// Advance the assignment to the next rank; last free component cycles fastest.
void advance(const Prepared& prep, std::vector<int>& assignment) {
  const int ecus = prep.inst.ecu_count();
  for (size_t i = prep.free_comps.size(); i-- > 0;) {
    int& digit = assignment[prep.free_comps[i]];
    if (++digit < ecus) return;
    digit = 0;
  }
}

struct ScanBest {
  int score = INT_MIN;
  std::uint64_t rank = 0;
  bool found = false;
};

ScanBest scan_range(const Prepared& prep, const ScoreWeights& weights, std::uint64_t lo,
                    std::uint64_t hi) {
  ScanBest best;
  if (lo >= hi) return best;
  std::vector<int> assignment = prep.base;
  decode_rank(prep, lo, assignment);
  Scratch scratch;
  for (std::uint64_t rank = lo; rank < hi; ++rank) {
    const Outcome outcome = detail::eval_assignment(prep.inst, assignment, weights, scratch);
    if (outcome.feasible() && outcome.score > best.score) {
      best.score = outcome.score;
      best.rank = rank;
      best.found = true;
    }
    advance(prep, assignment);
  }
  return best;
}

SolveResult result_from_best(const Prepared& prep, const ScanBest& best, std::uint64_t explored) {
  SolveResult result;
  result.explored = explored;
  if (!best.found) return result;
  std::vector<int> assignment = prep.base;
  decode_rank(prep, best.rank, assignment);
  result.mapping = detail::mapping_from_assignment(prep.inst, assignment);
  result.score = best.score;
  result.feasible = true;
  return result;
}

// Smaller rank wins ties so the parallel merge reproduces the serial
// first-found-among-ties rule exactly.
void merge_best(ScanBest& into, const ScanBest& other) {
  if (!other.found) return;
  if (!into.found || other.score > into.score ||
      (other.score == into.score && other.rank < into.rank)) {
    into = other;
  }
}

}  // namespace

SolveResult solve_exhaustive_serial(const SolveRequest& req) {
  const Prepared prep = prepare(req);
  const std::uint64_t total = candidate_count(prep, req.exhaustive_cap);
  const ScanBest best = scan_range(prep, req.weights, 0, total);
  return result_from_best(prep, best, total);
}

SolveResult solve_exhaustive(const SolveRequest& req) {
  const Prepared prep = prepare(req);
  const std::uint64_t total = candidate_count(prep, req.exhaustive_cap);
  const int threads = static_cast<int>(std::min<std::uint64_t>(worker_count(), total));
  std::vector<ScanBest> bests(threads);
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
#endif
  {
    const int t = worker_id();
    const std::uint64_t lo =
        static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * t / threads);
    const std::uint64_t hi =
        static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * (t + 1) / threads);
    bests[t] = scan_range(prep, req.weights, lo, hi);
  }
  ScanBest best;
  for (const ScanBest& b : bests) merge_best(best, b);
  return result_from_best(prep, best, total);
}

namespace {

struct BnbState {
  BnbState(const Prepared& p, const ScoreWeights& w) : prep(p), weights(w) {}

  const Prepared& prep;
  const ScoreWeights& weights;
  std::vector<int> order;  // free components, heaviest demand first
  std::vector<int> assignment;
  Scratch scratch;
  std::uint64_t explored = 0;
  int incumbent_score = INT_MIN;
  bool found = false;
  std::vector<int> incumbent;
};

void bnb_descend(BnbState& st, size_t level) {
  const int comp = st.order[level];
  const bool last = level + 1 == st.order.size();
  for (int e = 0; e < st.prep.inst.ecu_count(); ++e) {
    st.assignment[comp] = e;
    ++st.explored;
    const Outcome outcome =
        detail::eval_assignment(st.prep.inst, st.assignment, st.weights, st.scratch);
    if (outcome.violations > 0) continue;  // prune: constraint already violated
    if (last) {
      if (outcome.score > st.incumbent_score) {
        st.incumbent_score = outcome.score;
        st.incumbent = st.assignment;
        st.found = true;
      }
      continue;
    }
    // prune: optimistic bound cannot beat the incumbent
    if (st.found && outcome.score <= st.incumbent_score) continue;
    bnb_descend(st, level + 1);
  }
  st.assignment[comp] = kUnassigned;
}

}  // namespace

SolveResult solve_branch_and_bound(const SolveRequest& req) {
  const Prepared prep = prepare(req);
  BnbState st{prep, req.weights};
  st.order = prep.free_comps;
  std::sort(st.order.begin(), st.order.end(), [&](int a, int b) {
    const double da = prep.inst.comp_ram[a] + prep.inst.comp_cpu[a];
    const double db = prep.inst.comp_ram[b] + prep.inst.comp_cpu[b];
    return std::tie(db, a) < std::tie(da, b);  // demand descending, id ascending
  });
  st.assignment = prep.base;

  SolveResult result;
  // The pinned part is the root candidate; a violation here dooms every
  // completion, so the search can stop immediately.
  st.explored = 1;
  const Outcome root = detail::eval_assignment(prep.inst, st.assignment, req.weights, st.scratch);
  if (root.violations == 0) {
    if (st.order.empty()) {
      st.incumbent_score = root.score;
      st.incumbent = st.assignment;
      st.found = true;
    } else {
      bnb_descend(st, 0);
    }
  }
  result.explored = st.explored;
  if (st.found) {
    result.mapping = detail::mapping_from_assignment(prep.inst, st.incumbent);
    result.score = st.incumbent_score;
    result.feasible = true;
  }
  return result;
}

namespace {

// splitmix64; decorrelates per-restart streams from consecutive seeds
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t restart) {
  std::uint64_t z = seed + (restart + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct RestartResult {
  bool feasible = false;
  int objective = INT_MIN;
  std::uint64_t evals = 0;
  std::vector<int> assignment;
};

int penalized_objective(const Outcome& outcome) {
  return outcome.feasible() ? outcome.score : -1000 * outcome.violations;
}

RestartResult run_restart(const Prepared& prep, const SolveRequest& req, std::uint64_t restart) {
  std::mt19937_64 rng(mix_seed(req.seed, restart));
  const int ecus = prep.inst.ecu_count();
  RestartResult res;
  res.assignment = prep.base;
  for (int c : prep.free_comps) {
    res.assignment[c] = static_cast<int>(rng() % static_cast<std::uint64_t>(ecus));
  }
  Scratch scratch;
  Outcome current = detail::eval_assignment(prep.inst, res.assignment, req.weights, scratch);
  res.evals = 1;
  int current_f = penalized_objective(current);

  std::vector<int> probe = res.assignment;
  for (int iter = 0; iter < req.max_iters; ++iter) {
    int best_f = current_f;
    int best_comp = -1;
    int best_ecu = -1;
    for (int c : prep.free_comps) {
      const int original = probe[c];
      for (int e = 0; e < ecus; ++e) {
        if (e == original) continue;
        probe[c] = e;
        const Outcome outcome = detail::eval_assignment(prep.inst, probe, req.weights, scratch);
        ++res.evals;
        const int f = penalized_objective(outcome);
        if (f > best_f) {  // strict: first neighbor wins ties
          best_f = f;
          best_comp = c;
          best_ecu = e;
        }
      }
      probe[c] = original;
    }
    if (best_comp < 0) break;  // local maximum
    probe[best_comp] = best_ecu;
    res.assignment = probe;
    current_f = best_f;
  }
  res.feasible = current_f >= 0;
  res.objective = current_f;
  return res;
}

SolveResult merge_restarts(const Prepared& prep, const std::vector<RestartResult>& runs) {
  SolveResult result;
  int best = -1;
  for (int r = 0; r < static_cast<int>(runs.size()); ++r) {
    result.explored += runs[r].evals;
    if (!runs[r].feasible) continue;
    if (best < 0 || runs[r].objective > runs[best].objective) best = r;
  }
  if (best >= 0) {
    result.mapping = detail::mapping_from_assignment(prep.inst, runs[best].assignment);
    result.score = runs[best].objective;
    result.feasible = true;
  }
  return result;
}

void validate_search_params(const SolveRequest& req) {
  if (req.restarts <= 0) {
    throw Error(ErrorKind::SchemaError, "restarts", "restarts must be positive");
  }
  if (req.max_iters <= 0) {
    throw Error(ErrorKind::SchemaError, "max_iters", "max_iters must be positive");
  }
}

}  // namespace

SolveResult solve_local_search_serial(const SolveRequest& req) {
  validate_search_params(req);
  const Prepared prep = prepare(req);
  std::vector<RestartResult> runs(req.restarts);
  for (int r = 0; r < req.restarts; ++r) {
    runs[r] = run_restart(prep, req, static_cast<std::uint64_t>(r));
  }
  return merge_restarts(prep, runs);
}

SolveResult solve_local_search(const SolveRequest& req) {
  validate_search_params(req);
  const Prepared prep = prepare(req);
  std::vector<RestartResult> runs(req.restarts);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int r = 0; r < req.restarts; ++r) {
    runs[r] = run_restart(prep, req, static_cast<std::uint64_t>(r));
  }
  return merge_restarts(prep, runs);
}

}  // namespace autopart
