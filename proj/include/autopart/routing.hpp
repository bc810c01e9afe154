// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "autopart/model.hpp"

namespace autopart {

/// Directed path through the hardware graph. Consecutive hops chain
/// (hops[i].to == hops[i+1].from); the route is empty exactly when source and
/// destination coincide, with zero total latency.
struct Route {
  std::vector<NetLink> hops;
  double total_latency_ms = 0.0;

  bool empty() const noexcept { return hops.empty(); }
};

/// Minimum-total-latency path from src to dst. Ties are broken by fewer hops,
/// then by the lexicographically smallest sequence of intermediate ECU ids,
/// so the selected path is unique and stable across runs.
///
/// Throws UnknownId if either endpoint is undeclared, NoRouteExists if dst is
/// unreachable from src.
Route route(const HardwareModel& hw, std::string_view src, std::string_view dst);

/// Same as route(), but reports unreachability as nullopt instead of throwing.
std::optional<Route> try_route(const HardwareModel& hw, std::string_view src,
                               std::string_view dst);

}  // namespace autopart
