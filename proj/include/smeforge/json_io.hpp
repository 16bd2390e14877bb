#pragma once

// JSON views of engine values shared by the CLI and the HTTP service.

#include "json.hpp"
#include "smeforge/assembly.hpp"
#include "smeforge/error.hpp"
#include "smeforge/project.hpp"
#include "smeforge/repository.hpp"

namespace smeforge::json_io {

using Json = nlohmann::ordered_json;

Json to_json(const MethodFragment& fragment);
Json to_json(const DeonticCell& cell);
Json to_json(const PrecedenceConstraint& edge);
Json to_json(const DeonticFinding& finding);
Json to_json(const AssemblyReport& report);
Json to_json(const Relations& relations);
Json to_json(const UsabilityReport& report);
Json to_json(const Error& error);
Json construction_to_json(const std::string& id, const MethodConstruction& method);

/// Inverse of to_json(AssemblyReport). Throws Error{SchemaError}.
AssemblyReport assembly_report_from_json(const nlohmann::json& doc);

}  // namespace smeforge::json_io
