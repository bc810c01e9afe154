// SPDX-License-Identifier: Apache-2.0
#include "autopart/routing.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <tuple>

namespace autopart {

namespace {

// Dijkstra label: (latency, hop count, node-rank sequence). Ranks are
// positions in the sorted id list, so comparing rank sequences equals
// comparing the id sequences of intermediate ECUs. Labels with equal latency
// and hop count have equal-length sequences, which keeps the order monotone
// under extension; the first time a node is popped its label is minimal.
struct Label {
  double latency;
  int hops;
  std::vector<int> ranks;  // ranks of nodes visited after src, current node last
  int node;
  int parent;
  int via_link;

  bool operator>(const Label& other) const {
    return std::tie(latency, hops, ranks) > std::tie(other.latency, other.hops, other.ranks);
  }
};

}  // namespace

std::optional<Route> try_route(const HardwareModel& hw, std::string_view src,
                               std::string_view dst) {
  std::map<std::string_view, int> index;
  for (const auto& ecu : hw.ecus()) index.emplace(ecu.id, static_cast<int>(index.size()));

  auto src_it = index.find(src);
  auto dst_it = index.find(dst);
  if (src_it == index.end()) {
    throw Error(ErrorKind::UnknownId, std::string(src),
                "ECU '" + std::string(src) + "' is not declared in the hardware model");
  }
  if (dst_it == index.end()) {
    throw Error(ErrorKind::UnknownId, std::string(dst),
                "ECU '" + std::string(dst) + "' is not declared in the hardware model");
  }
  if (src == dst) return Route{};

  const int n = static_cast<int>(hw.ecus().size());
  std::vector<int> rank(n);  // rank[i] = position of ecu i's id in sorted order
  {
    int r = 0;
    for (const auto& [id, i] : index) {
      (void)id;
      rank[i] = r++;
    }
  }
  std::vector<std::vector<int>> out(n);  // link indices leaving each node
  for (int li = 0; li < static_cast<int>(hw.links().size()); ++li) {
    out[index.at(hw.links()[li].from)].push_back(li);
  }

  std::priority_queue<Label, std::vector<Label>, std::greater<Label>> frontier;
  std::vector<char> settled(n, 0);
  std::vector<int> parent(n, -1);
  std::vector<int> via_link(n, -1);

  frontier.push(Label{0.0, 0, {}, src_it->second, -1, -1});
  while (!frontier.empty()) {
    Label cur = frontier.top();
    frontier.pop();
    if (settled[cur.node]) continue;
    settled[cur.node] = 1;
    parent[cur.node] = cur.parent;
    via_link[cur.node] = cur.via_link;
    if (cur.node == dst_it->second) break;
    for (int li : out[cur.node]) {
      const NetLink& link = hw.links()[li];
      const int next = index.at(link.to);
      if (settled[next]) continue;
      Label ext{cur.latency + link.latency_ms, cur.hops + 1, cur.ranks, next, cur.node, li};
      ext.ranks.push_back(rank[next]);
      frontier.push(std::move(ext));
    }
  }
  if (!settled[dst_it->second]) return std::nullopt;

  std::vector<int> hop_links;
  for (int node = dst_it->second; via_link[node] != -1; node = parent[node]) {
    hop_links.push_back(via_link[node]);
  }
  std::reverse(hop_links.begin(), hop_links.end());

  Route result;
  for (int li : hop_links) {
    result.hops.push_back(hw.links()[li]);
    result.total_latency_ms += hw.links()[li].latency_ms;
  }
  return result;
}

Route route(const HardwareModel& hw, std::string_view src, std::string_view dst) {
  auto found = try_route(hw, src, dst);
  if (!found) {
    throw Error(ErrorKind::NoRouteExists, std::string(src) + "->" + std::string(dst),
                "no route from '" + std::string(src) + "' to '" + std::string(dst) + "'");
  }
  return *std::move(found);
}

}  // namespace autopart
