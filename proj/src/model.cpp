// SPDX-License-Identifier: Apache-2.0
#include "autopart/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace autopart {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::DanglingLinkEndpoint: return "DanglingLinkEndpoint";
    case ErrorKind::SelfLoopLink: return "SelfLoopLink";
    case ErrorKind::DuplicateLink: return "DuplicateLink";
    case ErrorKind::EmptyEcuSet: return "EmptyEcuSet";
    case ErrorKind::DanglingEdgeEndpoint: return "DanglingEdgeEndpoint";
    case ErrorKind::SelfLoopEdge: return "SelfLoopEdge";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::NoRouteExists: return "NoRouteExists";
    case ErrorKind::IncompleteMapping: return "IncompleteMapping";
    case ErrorKind::UnknownId: return "UnknownId";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::NoCompatibleTemplate: return "NoCompatibleTemplate";
    case ErrorKind::InfeasibleSynthesis: return "InfeasibleSynthesis";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

const char* to_string(Asil level) {
  switch (level) {
    case Asil::QM: return "QM";
    case Asil::A: return "A";
    case Asil::B: return "B";
    case Asil::C: return "C";
    case Asil::D: return "D";
  }
  return "QM";
}

const char* to_string(Tier tier) {
  switch (tier) {
    case Tier::Microcontroller: return "microcontroller";
    case Tier::Embedded: return "embedded";
    case Tier::Cloud: return "cloud";
  }
  return "embedded";
}

std::optional<Asil> asil_from_string(std::string_view s) {
  if (s == "QM") return Asil::QM;
  if (s == "A") return Asil::A;
  if (s == "B") return Asil::B;
  if (s == "C") return Asil::C;
  if (s == "D") return Asil::D;
  return std::nullopt;
}

std::optional<Tier> tier_from_string(std::string_view s) {
  if (s == "microcontroller") return Tier::Microcontroller;
  if (s == "embedded") return Tier::Embedded;
  if (s == "cloud") return Tier::Cloud;
  return std::nullopt;
}

namespace {

void check_finite_nonnegative(const Quantity& q, const std::string& owner, const char* field) {
  if (q.unlimited) return;
  if (!std::isfinite(q.value) || q.value < 0.0) {
    throw Error(ErrorKind::SchemaError, owner,
                "'" + owner + "': " + field + " must be a nonnegative number");
  }
}

void check_finite_positive(const Quantity& q, const std::string& owner, const char* field) {
  if (q.unlimited) return;
  if (!std::isfinite(q.value) || q.value <= 0.0) {
    throw Error(ErrorKind::SchemaError, owner,
                "'" + owner + "': " + field + " must be a positive number");
  }
}

void check_nonnegative(double v, const std::string& owner, const char* field) {
  if (!std::isfinite(v) || v < 0.0) {
    throw Error(ErrorKind::SchemaError, owner,
                "'" + owner + "': " + field + " must be a nonnegative number");
  }
}

// Capability sets are stored sorted and deduplicated; names must be nonempty.
void normalize_capability_set(std::vector<std::string>& caps, const std::string& owner,
                              const char* field) {
  for (const auto& cap : caps) {
    if (cap.empty()) {
      throw Error(ErrorKind::SchemaError, owner,
                  "'" + owner + "': " + field + " entries must be nonempty strings");
    }
  }
  std::sort(caps.begin(), caps.end());
  caps.erase(std::unique(caps.begin(), caps.end()), caps.end());
}

void check_id(const std::string& id, const char* what) {
  if (id.empty()) {
    throw Error(ErrorKind::SchemaError, id, std::string(what) + " id must be nonempty");
  }
}

}  // namespace

const EcuNode* HardwareModel::find_ecu(std::string_view id) const noexcept {
  for (const auto& e : ecus_) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

const NetLink* HardwareModel::find_link(std::string_view from, std::string_view to) const noexcept {
  for (const auto& l : links_) {
    if (l.from == from && l.to == to) return &l;
  }
  return nullptr;
}

bool HardwareModel::operator==(const HardwareModel& other) const {
  auto ecus_a = ecus_;
  auto ecus_b = other.ecus_;
  auto by_id = [](const EcuNode& a, const EcuNode& b) { return a.id < b.id; };
  std::sort(ecus_a.begin(), ecus_a.end(), by_id);
  std::sort(ecus_b.begin(), ecus_b.end(), by_id);
  auto links_a = links_;
  auto links_b = other.links_;
  auto by_pair = [](const NetLink& a, const NetLink& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  };
  std::sort(links_a.begin(), links_a.end(), by_pair);
  std::sort(links_b.begin(), links_b.end(), by_pair);
  return ecus_a == ecus_b && links_a == links_b;
}

const SwComponent* SoftwareModel::find_component(std::string_view id) const noexcept {
  for (const auto& c : components_) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

bool SoftwareModel::operator==(const SoftwareModel& other) const {
  auto comps_a = components_;
  auto comps_b = other.components_;
  auto by_id = [](const SwComponent& a, const SwComponent& b) { return a.id < b.id; };
  std::sort(comps_a.begin(), comps_a.end(), by_id);
  std::sort(comps_b.begin(), comps_b.end(), by_id);
  auto edges_a = edges_;
  auto edges_b = other.edges_;
  auto by_pair = [](const SwEdge& a, const SwEdge& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  };
  std::sort(edges_a.begin(), edges_a.end(), by_pair);
  std::sort(edges_b.begin(), edges_b.end(), by_pair);
  return comps_a == comps_b && edges_a == edges_b;
}

HardwareModel build_hardware_model(std::vector<EcuNode> ecus, std::vector<NetLink> links) {
  if (ecus.empty()) {
    throw Error(ErrorKind::EmptyEcuSet, "", "hardware model declares no ECUs");
  }
  std::set<std::string> ids;
  for (auto& ecu : ecus) {
    check_id(ecu.id, "ECU");
    if (!ids.insert(ecu.id).second) {
      throw Error(ErrorKind::DuplicateId, ecu.id, "ECU '" + ecu.id + "' declared more than once");
    }
    check_finite_nonnegative(ecu.ram_mb, ecu.id, "ram_mb");
    check_finite_nonnegative(ecu.cpu_units, ecu.id, "cpu_units");
    normalize_capability_set(ecu.capabilities, ecu.id, "capabilities");
  }
  std::set<std::pair<std::string, std::string>> pairs;
  for (auto& link : links) {
    const std::string key = link.from + "->" + link.to;
    if (link.from == link.to) {
      throw Error(ErrorKind::SelfLoopLink, key, "link '" + key + "' connects an ECU to itself");
    }
    for (const auto* end : {&link.from, &link.to}) {
      if (!ids.count(*end)) {
        throw Error(ErrorKind::DanglingLinkEndpoint, key,
                    "link '" + key + "' references undeclared ECU '" + *end + "'");
      }
    }
    if (!pairs.insert({link.from, link.to}).second) {
      throw Error(ErrorKind::DuplicateLink, key, "more than one link for pair '" + key + "'");
    }
    check_finite_positive(link.bandwidth_kbps, key, "bandwidth_kbps");
    check_nonnegative(link.latency_ms, key, "latency_ms");
  }
  HardwareModel model;
  model.ecus_ = std::move(ecus);
  model.links_ = std::move(links);
  return model;
}

SoftwareModel build_software_model(std::vector<SwComponent> components,
                                   std::vector<SwEdge> edges) {
  std::set<std::string> ids;
  for (auto& comp : components) {
    check_id(comp.id, "component");
    if (!ids.insert(comp.id).second) {
      throw Error(ErrorKind::DuplicateId, comp.id,
                  "component '" + comp.id + "' declared more than once");
    }
    check_nonnegative(comp.ram_mb, comp.id, "ram_mb");
    check_nonnegative(comp.cpu_units, comp.id, "cpu_units");
    normalize_capability_set(comp.requires_caps, comp.id, "requires");
  }
  std::set<std::pair<std::string, std::string>> pairs;
  for (auto& edge : edges) {
    const std::string key = edge.from + "->" + edge.to;
    if (edge.from == edge.to) {
      throw Error(ErrorKind::SelfLoopEdge, key,
                  "edge '" + key + "' connects a component to itself");
    }
    for (const auto* end : {&edge.from, &edge.to}) {
      if (!ids.count(*end)) {
        throw Error(ErrorKind::DanglingEdgeEndpoint, key,
                    "edge '" + key + "' references undeclared component '" + *end + "'");
      }
    }
    if (!pairs.insert({edge.from, edge.to}).second) {
      throw Error(ErrorKind::DuplicateEdge, key, "more than one edge for pair '" + key + "'");
    }
    check_nonnegative(edge.bandwidth_kbps, key, "bandwidth_kbps");
    check_finite_positive(edge.max_latency_ms, key, "max_latency_ms");
  }
  SoftwareModel model;
  model.components_ = std::move(components);
  model.edges_ = std::move(edges);
  return model;
}

}  // namespace autopart
