// SPDX-License-Identifier: Apache-2.0
#include "autopart/hwsynth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

namespace autopart {

void validate_catalog(const DeviceCatalog& catalog) {
  if (catalog.templates.empty()) {
    throw Error(ErrorKind::SchemaError, "templates", "catalog declares no device templates");
  }
  std::set<std::string> ids;
  bool has_gateway = false;
  for (const auto& tmpl : catalog.templates) {
    if (tmpl.id.empty()) {
      throw Error(ErrorKind::SchemaError, "templates", "template id must be nonempty");
    }
    if (!ids.insert(tmpl.id).second) {
      throw Error(ErrorKind::DuplicateId, tmpl.id,
                  "template '" + tmpl.id + "' declared more than once");
    }
    auto bad = [&](const char* field) {
      return Error(ErrorKind::SchemaError, tmpl.id,
                   "template '" + tmpl.id + "': " + field + " must be nonnegative");
    };
    if (tmpl.ram_mb.is_finite() && (!std::isfinite(tmpl.ram_mb.value) || tmpl.ram_mb.value < 0))
      throw bad("ram_mb");
    if (tmpl.cpu_units.is_finite() &&
        (!std::isfinite(tmpl.cpu_units.value) || tmpl.cpu_units.value < 0))
      throw bad("cpu_units");
    if (!std::isfinite(tmpl.cost) || tmpl.cost < 0) throw bad("cost");
    for (const auto& cap : tmpl.capabilities) {
      if (cap.empty()) {
        throw Error(ErrorKind::SchemaError, tmpl.id,
                    "template '" + tmpl.id + "': capability names must be nonempty");
      }
    }
    has_gateway = has_gateway || tmpl.gateway_capable;
  }
  if (!has_gateway) {
    throw Error(ErrorKind::SchemaError, "templates", "catalog has no gateway_capable template");
  }
  const auto& defaults = catalog.link_defaults;
  if (defaults.bandwidth_kbps.is_finite() &&
      (!std::isfinite(defaults.bandwidth_kbps.value) || defaults.bandwidth_kbps.value <= 0)) {
    throw Error(ErrorKind::SchemaError, "link_defaults",
                "link_defaults.bandwidth_kbps must be positive");
  }
  if (!std::isfinite(defaults.latency_ms) || defaults.latency_ms < 0) {
    throw Error(ErrorKind::SchemaError, "link_defaults",
                "link_defaults.latency_ms must be nonnegative");
  }
}

namespace {

struct OpenInstance {
  const DeviceTemplate* tmpl;
  std::string id;
  Quantity ram_left;
  Quantity cpu_left;
};

bool caps_cover(const std::vector<std::string>& provided, const std::vector<std::string>& wanted) {
  for (const auto& cap : wanted) {
    if (std::find(provided.begin(), provided.end(), cap) == provided.end()) return false;
  }
  return true;
}

bool fits(const Quantity& left, double demand) {
  return !left.is_finite() || left.value >= demand;
}

bool template_can_host(const DeviceTemplate& tmpl, const SwComponent& comp) {
  return caps_cover(tmpl.capabilities, comp.requires_caps) &&
         static_cast<int>(tmpl.integrity) >= static_cast<int>(comp.criticality) &&
         fits(tmpl.ram_mb, comp.ram_mb) && fits(tmpl.cpu_units, comp.cpu_units);
}

}  // namespace

SynthesisResult suggest_hardware(const SoftwareModel& sw, const DeviceCatalog& catalog) {
  validate_catalog(catalog);

  auto cheaper = [](const DeviceTemplate* a, const DeviceTemplate* b) {
    return std::tie(a->cost, a->id) < std::tie(b->cost, b->id);
  };

  const DeviceTemplate* hub_tmpl = nullptr;
  for (const auto& tmpl : catalog.templates) {
    if (tmpl.gateway_capable && (!hub_tmpl || cheaper(&tmpl, hub_tmpl))) hub_tmpl = &tmpl;
  }

  std::vector<OpenInstance> instances;
  std::set<std::string> instance_ids;
  std::map<std::string, int> next_index;
  auto open_instance = [&](const DeviceTemplate& tmpl) -> OpenInstance& {
    int& k = next_index[tmpl.id];
    std::string id;
    do {
      id = tmpl.id + "-" + std::to_string(++k);
    } while (!instance_ids.insert(id).second);
    instances.push_back(OpenInstance{&tmpl, std::move(id), tmpl.ram_mb, tmpl.cpu_units});
    return instances.back();
  };
  open_instance(*hub_tmpl);  // the hub is always the first open instance

  std::vector<const SwComponent*> order;
  for (const auto& comp : sw.components()) order.push_back(&comp);
  std::sort(order.begin(), order.end(), [](const SwComponent* a, const SwComponent* b) {
    const double da = a->ram_mb + a->cpu_units;
    const double db = b->ram_mb + b->cpu_units;
    return std::tie(db, a->id) < std::tie(da, b->id);  // demand descending, id ascending
  });

  DeploymentMapping mapping;
  for (const SwComponent* comp : order) {
    OpenInstance* placed = nullptr;
    for (auto& inst : instances) {
      if (caps_cover(inst.tmpl->capabilities, comp->requires_caps) &&
          static_cast<int>(inst.tmpl->integrity) >= static_cast<int>(comp->criticality) &&
          fits(inst.ram_left, comp->ram_mb) && fits(inst.cpu_left, comp->cpu_units)) {
        placed = &inst;
        break;
      }
    }
    if (!placed) {
      const DeviceTemplate* best = nullptr;
      for (const auto& tmpl : catalog.templates) {
        if (template_can_host(tmpl, *comp) && (!best || cheaper(&tmpl, best))) best = &tmpl;
      }
      if (!best) {
        throw Error(ErrorKind::NoCompatibleTemplate, comp->id,
                    "no catalog template can host component '" + comp->id + "'");
      }
      placed = &open_instance(*best);
    }
    if (placed->ram_left.is_finite()) placed->ram_left.value -= comp->ram_mb;
    if (placed->cpu_left.is_finite()) placed->cpu_left.value -= comp->cpu_units;
    mapping.assignment[comp->id] = placed->id;
  }

  std::vector<EcuNode> ecus;
  double total_cost = 0.0;
  for (const auto& inst : instances) {
    ecus.push_back(EcuNode{inst.id, inst.tmpl->tier, inst.tmpl->ram_mb, inst.tmpl->cpu_units,
                           inst.tmpl->capabilities, inst.tmpl->integrity});
    total_cost += inst.tmpl->cost;
  }
  std::vector<NetLink> links;
  const std::string& hub_id = instances.front().id;
  for (size_t i = 1; i < instances.size(); ++i) {
    links.push_back(NetLink{instances[i].id, hub_id, catalog.link_defaults.bandwidth_kbps,
                            catalog.link_defaults.latency_ms});
    links.push_back(NetLink{hub_id, instances[i].id, catalog.link_defaults.bandwidth_kbps,
                            catalog.link_defaults.latency_ms});
  }

  SynthesisResult result;
  result.hw = build_hardware_model(std::move(ecus), std::move(links));
  result.mapping = std::move(mapping);
  result.total_cost = total_cost;

  const EvaluationResult verdict = evaluate(result.hw, sw, result.mapping);
  if (!verdict.feasible()) {
    const Violation& first = verdict.violations.front();
    throw Error(ErrorKind::InfeasibleSynthesis, first.subject,
                "synthesized deployment is infeasible: " + std::string(to_string(first.kind)) +
                    " on '" + first.subject + "' (" + first.detail + ")");
  }
  return result;
}

}  // namespace autopart
