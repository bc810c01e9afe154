// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "autopart/evaluation.hpp"
#include "autopart/hwsynth.hpp"
#include "autopart/model.hpp"
#include "autopart/solvers.hpp"

namespace autopart {

// Model documents. Parsing is strict: unknown fields are rejected, malformed
// text raises SyntaxError, shape/value problems raise SchemaError naming the
// offending field. Serializers emit every field explicitly with keys sorted,
// so serialize(parse(text)) reproduces a canonical document and
// parse(serialize(model)) structurally equals the model.

HardwareModel hardware_from_json(const nlohmann::json& doc);
nlohmann::json hardware_to_json(const HardwareModel& model);
HardwareModel parse_hardware(std::string_view text);
std::string serialize_hardware(const HardwareModel& model);

SoftwareModel software_from_json(const nlohmann::json& doc);
nlohmann::json software_to_json(const SoftwareModel& model);
SoftwareModel parse_software(std::string_view text);
std::string serialize_software(const SoftwareModel& model);

DeploymentMapping mapping_from_json(const nlohmann::json& doc);
nlohmann::json mapping_to_json(const DeploymentMapping& mapping);
DeploymentMapping parse_mapping(std::string_view text);
std::string serialize_mapping(const DeploymentMapping& mapping);

DeviceCatalog catalog_from_json(const nlohmann::json& doc);
nlohmann::json catalog_to_json(const DeviceCatalog& catalog);
DeviceCatalog parse_catalog(std::string_view text);
std::string serialize_catalog(const DeviceCatalog& catalog);

// Result documents (one-way).
nlohmann::json to_json(const EvaluationResult& result);
nlohmann::json to_json(const SolveResult& result);
nlohmann::json to_json(const SynthesisResult& result);

}  // namespace autopart
