// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autopart/errors.hpp"

namespace autopart {

/// Safety integrity level, ordered QM < A < B < C < D. Used both as the
/// rating of a device and as the criticality of a software component.
enum class Asil : unsigned char { QM = 0, A, B, C, D };

/// Device class: microcontrollers talk to sensors/actuators, embedded
/// computers carry general-purpose stacks, cloud nodes live off-board.
enum class Tier : unsigned char { Microcontroller, Embedded, Cloud };

const char* to_string(Asil level);
const char* to_string(Tier tier);
std::optional<Asil> asil_from_string(std::string_view s);
std::optional<Tier> tier_from_string(std::string_view s);

/// Nonnegative scalar that may be unlimited. Unlimited capacities never
/// overflow and never contribute a headroom term to the score.
struct Quantity {
  double value = 0.0;
  bool unlimited = false;

  static constexpr Quantity infinite() noexcept { return {0.0, true}; }
  static constexpr Quantity finite(double v) noexcept { return {v, false}; }
  constexpr bool is_finite() const noexcept { return !unlimited; }

  friend constexpr bool operator==(const Quantity&, const Quantity&) noexcept = default;
};

struct EcuNode {
  std::string id;
  Tier tier = Tier::Embedded;
  Quantity ram_mb = Quantity::infinite();
  Quantity cpu_units = Quantity::infinite();
  std::vector<std::string> capabilities;  // kept sorted/unique by the builders
  Asil integrity = Asil::QM;

  friend bool operator==(const EcuNode&, const EcuNode&) = default;
};

/// Directed point-to-point link. A bidirectional bus is modeled as two
/// directed links, one per direction.
struct NetLink {
  std::string from;
  std::string to;
  Quantity bandwidth_kbps = Quantity::infinite();
  double latency_ms = 0.0;

  friend bool operator==(const NetLink&, const NetLink&) = default;
};

struct SwComponent {
  std::string id;
  double ram_mb = 0.0;
  double cpu_units = 0.0;
  std::vector<std::string> requires_caps;  // kept sorted/unique by the builders
  Asil criticality = Asil::QM;

  friend bool operator==(const SwComponent&, const SwComponent&) = default;
};

/// Required communication between two components. `max_latency_ms` bounds the
/// end-to-end routed latency when finite.
struct SwEdge {
  std::string from;
  std::string to;
  double bandwidth_kbps = 0.0;
  Quantity max_latency_ms = Quantity::infinite();

  friend bool operator==(const SwEdge&, const SwEdge&) = default;
};

/// Validated hardware twin: at least one ECU, all link endpoints declared,
/// no self-loops, at most one link per ordered ECU pair. Immutable after
/// construction; safe to share across threads.
class HardwareModel {
 public:
  HardwareModel() = default;

  const std::vector<EcuNode>& ecus() const noexcept { return ecus_; }
  const std::vector<NetLink>& links() const noexcept { return links_; }

  const EcuNode* find_ecu(std::string_view id) const noexcept;
  const NetLink* find_link(std::string_view from, std::string_view to) const noexcept;

  /// Set equality: declaration order of ecus/links does not matter.
  bool operator==(const HardwareModel& other) const;

 private:
  friend HardwareModel build_hardware_model(std::vector<EcuNode> ecus,
                                            std::vector<NetLink> links);
  std::vector<EcuNode> ecus_;
  std::vector<NetLink> links_;
};

/// Validated software twin: unique component ids, edge endpoints declared,
/// no self-loops, at most one edge per ordered pair. May be empty.
class SoftwareModel {
 public:
  SoftwareModel() = default;

  const std::vector<SwComponent>& components() const noexcept { return components_; }
  const std::vector<SwEdge>& edges() const noexcept { return edges_; }

  const SwComponent* find_component(std::string_view id) const noexcept;

  bool operator==(const SoftwareModel& other) const;

 private:
  friend SoftwareModel build_software_model(std::vector<SwComponent> components,
                                            std::vector<SwEdge> edges);
  std::vector<SwComponent> components_;
  std::vector<SwEdge> edges_;
};

/// Assignment of software components to devices. Totality against a concrete
/// SoftwareModel is checked at evaluation time, not at construction.
struct DeploymentMapping {
  std::map<std::string, std::string> assignment;  // component id -> ecu id

  friend bool operator==(const DeploymentMapping&, const DeploymentMapping&) = default;
};

HardwareModel build_hardware_model(std::vector<EcuNode> ecus, std::vector<NetLink> links);
SoftwareModel build_software_model(std::vector<SwComponent> components,
                                   std::vector<SwEdge> edges);

}  // namespace autopart
