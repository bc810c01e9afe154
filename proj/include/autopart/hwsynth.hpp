// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "autopart/evaluation.hpp"
#include "autopart/model.hpp"

namespace autopart {

/// Priced, instantiable device description. Instances inherit all attributes.
struct DeviceTemplate {
  std::string id;
  Tier tier = Tier::Embedded;
  Quantity ram_mb = Quantity::infinite();
  Quantity cpu_units = Quantity::infinite();
  std::vector<std::string> capabilities;
  Asil integrity = Asil::QM;
  double cost = 0.0;
  bool gateway_capable = false;

  friend bool operator==(const DeviceTemplate&, const DeviceTemplate&) = default;
};

/// Attributes applied to every synthesized link.
struct LinkDefaults {
  Quantity bandwidth_kbps = Quantity::infinite();
  double latency_ms = 0.0;

  friend bool operator==(const LinkDefaults&, const LinkDefaults&) = default;
};

struct DeviceCatalog {
  std::vector<DeviceTemplate> templates;
  LinkDefaults link_defaults;

  friend bool operator==(const DeviceCatalog&, const DeviceCatalog&) = default;
};

/// Throws unless the catalog has uniquely named templates, at least one of
/// them gateway-capable, and well-formed attribute values.
void validate_catalog(const DeviceCatalog& catalog);

struct SynthesisResult {
  HardwareModel hw;
  DeploymentMapping mapping;
  double total_cost = 0.0;
};

/// Proposes hardware (a star of device instances around a gateway hub) plus a
/// deployment for the given software model.
///
/// Deterministic greedy first-fit-decreasing: the cheapest gateway-capable
/// template becomes the hub; components are placed heaviest-demand-first into
/// the first open instance whose capabilities, integrity, and remaining
/// capacity fit, opening the cheapest compatible new instance otherwise.
/// Template ties break by id. The result is verified with evaluate() before
/// being returned.
///
/// Throws NoCompatibleTemplate when no template can ever host some component,
/// InfeasibleSynthesis when the verification finds violations (e.g., latency
/// bounds unsatisfiable under the catalog's link defaults).
SynthesisResult suggest_hardware(const SoftwareModel& sw, const DeviceCatalog& catalog);

}  // namespace autopart
