// SPDX-License-Identifier: Apache-2.0
#include "autopart/json_io.hpp"

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace autopart {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& reason) {
  throw Error(ErrorKind::SchemaError, path, path + ": " + reason);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected a JSON object");
}

void reject_unknown_fields(const json& obj, const std::string& path,
                           std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool known = false;
    for (const char* name : allowed) known = known || key == name;
    if (!known) schema_error(path + "." + key, "unknown field");
  }
}

std::string get_string(const json& obj, const char* field, const std::string& path) {
  auto it = obj.find(field);
  if (it == obj.end()) schema_error(path + "." + field, "missing required field");
  if (!it->is_string()) schema_error(path + "." + field, "expected a string");
  return it->get<std::string>();
}

std::string get_id(const json& obj, const char* field, const std::string& path) {
  std::string id = get_string(obj, field, path);
  if (id.empty()) schema_error(path + "." + field, "must be nonempty");
  return id;
}

enum class Sign { NonNegative, Positive };

double check_sign(double v, Sign sign, const std::string& path) {
  if (sign == Sign::NonNegative && v < 0) schema_error(path, "must be nonnegative");
  if (sign == Sign::Positive && v <= 0) schema_error(path, "must be positive");
  return v;
}

// number, with "infinity" (or "unbounded") accepted when `word` is non-null
Quantity get_quantity(const json& obj, const char* field, const std::string& path,
                      const char* word, Sign sign, Quantity fallback) {
  auto it = obj.find(field);
  if (it == obj.end()) return fallback;
  const std::string fpath = path + "." + field;
  if (it->is_string()) {
    if (word && it->get<std::string>() == word) return Quantity::infinite();
    schema_error(fpath, word ? std::string("expected a number or \"") + word + "\""
                             : "expected a number");
  }
  if (!it->is_number()) {
    schema_error(fpath, word ? std::string("expected a number or \"") + word + "\""
                             : "expected a number");
  }
  return Quantity::finite(check_sign(it->get<double>(), sign, fpath));
}

double get_number(const json& obj, const char* field, const std::string& path, Sign sign,
                  double fallback) {
  auto it = obj.find(field);
  if (it == obj.end()) return fallback;
  const std::string fpath = path + "." + field;
  if (!it->is_number()) schema_error(fpath, "expected a number");
  return check_sign(it->get<double>(), sign, fpath);
}

std::vector<std::string> get_string_array(const json& obj, const char* field,
                                          const std::string& path) {
  auto it = obj.find(field);
  if (it == obj.end()) return {};
  const std::string fpath = path + "." + field;
  if (!it->is_array()) schema_error(fpath, "expected an array of strings");
  std::vector<std::string> out;
  for (size_t i = 0; i < it->size(); ++i) {
    const json& entry = (*it)[i];
    if (!entry.is_string() || entry.get<std::string>().empty()) {
      schema_error(fpath + "[" + std::to_string(i) + "]", "expected a nonempty string");
    }
    out.push_back(entry.get<std::string>());
  }
  return out;
}

Asil get_asil(const json& obj, const char* field, const std::string& path) {
  auto it = obj.find(field);
  if (it == obj.end()) return Asil::QM;
  const std::string fpath = path + "." + field;
  if (!it->is_string()) schema_error(fpath, "expected one of \"QM\",\"A\",\"B\",\"C\",\"D\"");
  auto level = asil_from_string(it->get<std::string>());
  if (!level) schema_error(fpath, "expected one of \"QM\",\"A\",\"B\",\"C\",\"D\"");
  return *level;
}

Tier get_tier(const json& obj, const std::string& path) {
  auto it = obj.find("tier");
  if (it == obj.end()) schema_error(path + ".tier", "missing required field");
  const std::string fpath = path + ".tier";
  if (!it->is_string())
    schema_error(fpath, "expected one of \"microcontroller\",\"embedded\",\"cloud\"");
  auto tier = tier_from_string(it->get<std::string>());
  if (!tier) schema_error(fpath, "expected one of \"microcontroller\",\"embedded\",\"cloud\"");
  return *tier;
}

bool get_bool(const json& obj, const char* field, const std::string& path, bool fallback) {
  auto it = obj.find(field);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) schema_error(path + "." + field, "expected a boolean");
  return it->get<bool>();
}

json parse_text(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    throw Error(ErrorKind::SyntaxError, "", "document is not well-formed JSON");
  }
  return doc;
}

// Integral values serialize as JSON integers so documents stay readable.
json num_json(double v) {
  if (v == std::floor(v) && std::abs(v) <= 9.0e15) return static_cast<std::int64_t>(v);
  return v;
}

json quantity_json(const Quantity& q, const char* word) {
  if (q.unlimited) return word;
  return num_json(q.value);
}

}  // namespace

HardwareModel hardware_from_json(const json& doc) {
  require_object(doc, "document");
  reject_unknown_fields(doc, "document", {"ecus", "links"});
  auto ecus_it = doc.find("ecus");
  if (ecus_it == doc.end()) schema_error("document.ecus", "missing required field");
  if (!ecus_it->is_array()) schema_error("document.ecus", "expected an array");

  std::vector<EcuNode> ecus;
  for (size_t i = 0; i < ecus_it->size(); ++i) {
    const json& e = (*ecus_it)[i];
    const std::string path = "ecus[" + std::to_string(i) + "]";
    require_object(e, path);
    reject_unknown_fields(e, path,
                          {"id", "tier", "ram_mb", "cpu_units", "capabilities", "integrity"});
    EcuNode node;
    node.id = get_id(e, "id", path);
    node.ram_mb = get_quantity(e, "ram_mb", path, "infinity", Sign::NonNegative,
                               Quantity::infinite());
    node.cpu_units = get_quantity(e, "cpu_units", path, "infinity", Sign::NonNegative,
                                  Quantity::infinite());
    node.capabilities = get_string_array(e, "capabilities", path);
    node.integrity = get_asil(e, "integrity", path);
    node.tier = get_tier(e, path);
    ecus.push_back(std::move(node));
  }

  std::vector<NetLink> links;
  auto links_it = doc.find("links");
  if (links_it != doc.end()) {
    if (!links_it->is_array()) schema_error("document.links", "expected an array");
    for (size_t i = 0; i < links_it->size(); ++i) {
      const json& l = (*links_it)[i];
      const std::string path = "links[" + std::to_string(i) + "]";
      require_object(l, path);
      reject_unknown_fields(l, path, {"from", "to", "bandwidth_kbps", "latency_ms"});
      NetLink link;
      link.from = get_id(l, "from", path);
      link.to = get_id(l, "to", path);
      link.bandwidth_kbps = get_quantity(l, "bandwidth_kbps", path, "infinity", Sign::Positive,
                                         Quantity::infinite());
      link.latency_ms = get_number(l, "latency_ms", path, Sign::NonNegative, 0.0);
      links.push_back(std::move(link));
    }
  }
  return build_hardware_model(std::move(ecus), std::move(links));
}

json hardware_to_json(const HardwareModel& model) {
  json ecus = json::array();
  for (const auto& ecu : model.ecus()) {
    ecus.push_back(json{{"id", ecu.id},
                        {"tier", to_string(ecu.tier)},
                        {"ram_mb", quantity_json(ecu.ram_mb, "infinity")},
                        {"cpu_units", quantity_json(ecu.cpu_units, "infinity")},
                        {"capabilities", ecu.capabilities},
                        {"integrity", to_string(ecu.integrity)}});
  }
  json links = json::array();
  for (const auto& link : model.links()) {
    links.push_back(json{{"from", link.from},
                         {"to", link.to},
                         {"bandwidth_kbps", quantity_json(link.bandwidth_kbps, "infinity")},
                         {"latency_ms", num_json(link.latency_ms)}});
  }
  return json{{"ecus", std::move(ecus)}, {"links", std::move(links)}};
}

SoftwareModel software_from_json(const json& doc) {
  require_object(doc, "document");
  reject_unknown_fields(doc, "document", {"components", "edges"});

  std::vector<SwComponent> components;
  if (auto it = doc.find("components"); it != doc.end()) {
    if (!it->is_array()) schema_error("document.components", "expected an array");
    for (size_t i = 0; i < it->size(); ++i) {
      const json& c = (*it)[i];
      const std::string path = "components[" + std::to_string(i) + "]";
      require_object(c, path);
      reject_unknown_fields(c, path, {"id", "ram_mb", "cpu_units", "requires", "criticality"});
      SwComponent comp;
      comp.id = get_id(c, "id", path);
      comp.ram_mb = get_number(c, "ram_mb", path, Sign::NonNegative, 0.0);
      comp.cpu_units = get_number(c, "cpu_units", path, Sign::NonNegative, 0.0);
      comp.requires_caps = get_string_array(c, "requires", path);
      comp.criticality = get_asil(c, "criticality", path);
      components.push_back(std::move(comp));
    }
  }

  std::vector<SwEdge> edges;
  if (auto it = doc.find("edges"); it != doc.end()) {
    if (!it->is_array()) schema_error("document.edges", "expected an array");
    for (size_t i = 0; i < it->size(); ++i) {
      const json& e = (*it)[i];
      const std::string path = "edges[" + std::to_string(i) + "]";
      require_object(e, path);
      reject_unknown_fields(e, path, {"from", "to", "bandwidth_kbps", "max_latency_ms"});
      SwEdge edge;
      edge.from = get_id(e, "from", path);
      edge.to = get_id(e, "to", path);
      edge.bandwidth_kbps = get_number(e, "bandwidth_kbps", path, Sign::NonNegative, 0.0);
      edge.max_latency_ms = get_quantity(e, "max_latency_ms", path, "unbounded", Sign::Positive,
                                         Quantity::infinite());
      edges.push_back(std::move(edge));
    }
  }
  return build_software_model(std::move(components), std::move(edges));
}

json software_to_json(const SoftwareModel& model) {
  json components = json::array();
  for (const auto& comp : model.components()) {
    components.push_back(json{{"id", comp.id},
                              {"ram_mb", num_json(comp.ram_mb)},
                              {"cpu_units", num_json(comp.cpu_units)},
                              {"requires", comp.requires_caps},
                              {"criticality", to_string(comp.criticality)}});
  }
  json edges = json::array();
  for (const auto& edge : model.edges()) {
    edges.push_back(json{{"from", edge.from},
                         {"to", edge.to},
                         {"bandwidth_kbps", num_json(edge.bandwidth_kbps)},
                         {"max_latency_ms", quantity_json(edge.max_latency_ms, "unbounded")}});
  }
  return json{{"components", std::move(components)}, {"edges", std::move(edges)}};
}

DeploymentMapping mapping_from_json(const json& doc) {
  require_object(doc, "document");
  DeploymentMapping mapping;
  for (const auto& [comp, ecu] : doc.items()) {
    if (comp.empty()) schema_error("document", "component ids must be nonempty");
    if (!ecu.is_string() || ecu.get<std::string>().empty()) {
      schema_error("document." + comp, "expected a nonempty ECU id string");
    }
    mapping.assignment[comp] = ecu.get<std::string>();
  }
  return mapping;
}

json mapping_to_json(const DeploymentMapping& mapping) {
  json doc = json::object();
  for (const auto& [comp, ecu] : mapping.assignment) doc[comp] = ecu;
  return doc;
}

DeviceCatalog catalog_from_json(const json& doc) {
  require_object(doc, "document");
  reject_unknown_fields(doc, "document", {"templates", "link_defaults"});
  auto templates_it = doc.find("templates");
  if (templates_it == doc.end()) schema_error("document.templates", "missing required field");
  if (!templates_it->is_array()) schema_error("document.templates", "expected an array");

  DeviceCatalog catalog;
  for (size_t i = 0; i < templates_it->size(); ++i) {
    const json& t = (*templates_it)[i];
    const std::string path = "templates[" + std::to_string(i) + "]";
    require_object(t, path);
    reject_unknown_fields(t, path, {"id", "tier", "ram_mb", "cpu_units", "capabilities",
                                    "integrity", "cost", "gateway_capable"});
    DeviceTemplate tmpl;
    tmpl.id = get_id(t, "id", path);
    tmpl.ram_mb = get_quantity(t, "ram_mb", path, "infinity", Sign::NonNegative,
                               Quantity::infinite());
    tmpl.cpu_units = get_quantity(t, "cpu_units", path, "infinity", Sign::NonNegative,
                                  Quantity::infinite());
    tmpl.capabilities = get_string_array(t, "capabilities", path);
    tmpl.integrity = get_asil(t, "integrity", path);
    if (t.find("cost") == t.end()) schema_error(path + ".cost", "missing required field");
    tmpl.cost = get_number(t, "cost", path, Sign::NonNegative, 0.0);
    tmpl.gateway_capable = get_bool(t, "gateway_capable", path, false);
    tmpl.tier = get_tier(t, path);
    catalog.templates.push_back(std::move(tmpl));
  }

  if (auto it = doc.find("link_defaults"); it != doc.end()) {
    const std::string path = "link_defaults";
    require_object(*it, path);
    reject_unknown_fields(*it, path, {"bandwidth_kbps", "latency_ms"});
    catalog.link_defaults.bandwidth_kbps = get_quantity(*it, "bandwidth_kbps", path, "infinity",
                                                        Sign::Positive, Quantity::infinite());
    catalog.link_defaults.latency_ms = get_number(*it, "latency_ms", path, Sign::NonNegative, 0.0);
  }
  validate_catalog(catalog);
  return catalog;
}

json catalog_to_json(const DeviceCatalog& catalog) {
  json templates = json::array();
  for (const auto& tmpl : catalog.templates) {
    templates.push_back(json{{"id", tmpl.id},
                             {"tier", to_string(tmpl.tier)},
                             {"ram_mb", quantity_json(tmpl.ram_mb, "infinity")},
                             {"cpu_units", quantity_json(tmpl.cpu_units, "infinity")},
                             {"capabilities", tmpl.capabilities},
                             {"integrity", to_string(tmpl.integrity)},
                             {"cost", num_json(tmpl.cost)},
                             {"gateway_capable", tmpl.gateway_capable}});
  }
  return json{{"templates", std::move(templates)},
              {"link_defaults",
               json{{"bandwidth_kbps", quantity_json(catalog.link_defaults.bandwidth_kbps,
                                                     "infinity")},
                    {"latency_ms", num_json(catalog.link_defaults.latency_ms)}}}};
}

HardwareModel parse_hardware(std::string_view text) { return hardware_from_json(parse_text(text)); }
std::string serialize_hardware(const HardwareModel& model) {
  return hardware_to_json(model).dump(2) + "\n";
}

SoftwareModel parse_software(std::string_view text) { return software_from_json(parse_text(text)); }
std::string serialize_software(const SoftwareModel& model) {
  return software_to_json(model).dump(2) + "\n";
}

DeploymentMapping parse_mapping(std::string_view text) {
  return mapping_from_json(parse_text(text));
}
std::string serialize_mapping(const DeploymentMapping& mapping) {
  return mapping_to_json(mapping).dump(2) + "\n";
}

DeviceCatalog parse_catalog(std::string_view text) { return catalog_from_json(parse_text(text)); }
std::string serialize_catalog(const DeviceCatalog& catalog) {
  return catalog_to_json(catalog).dump(2) + "\n";
}

json to_json(const EvaluationResult& result) {
  json violations = json::array();
  for (const auto& v : result.violations) {
    violations.push_back(
        json{{"kind", to_string(v.kind)}, {"subject", v.subject}, {"detail", v.detail}});
  }
  json ecu_util = json::object();
  for (const auto& [id, use] : result.utilization.ecu) {
    ecu_util[id] = json{{"ram_mb", num_json(use.ram_mb)}, {"cpu_units", num_json(use.cpu_units)}};
  }
  json link_util = json::object();
  for (const auto& [key, used] : result.utilization.link) link_util[key] = num_json(used);
  json edge_lat = json::object();
  for (const auto& [key, lat] : result.utilization.edge_latency) edge_lat[key] = num_json(lat);
  return json{{"score", result.score},
              {"feasible", result.feasible()},
              {"violations", std::move(violations)},
              {"ecu_utilization", std::move(ecu_util)},
              {"link_utilization", std::move(link_util)},
              {"edge_latencies", std::move(edge_lat)}};
}

json to_json(const SolveResult& result) {
  return json{{"feasible", result.feasible},
              {"score", result.score},
              {"mapping", result.mapping ? mapping_to_json(*result.mapping) : json(nullptr)},
              {"explored", result.explored}};
}

json to_json(const SynthesisResult& result) {
  return json{{"hardware", hardware_to_json(result.hw)},
              {"mapping", mapping_to_json(result.mapping)},
              {"total_cost", num_json(result.total_cost)}};
}

}  // namespace autopart
