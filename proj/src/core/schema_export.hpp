#pragma once

#include "schema.hpp"

namespace gramlink {

/// Deterministic JSON rendering of a schema: classes, interfaces, enums,
/// associations and reference specs with fixed key order.
std::string schemaToJson(const Schema& schema);

/// PlantUML class diagram: classes with members, inheritance, interface
/// realization, compositions and associations with multiplicities.
std::string schemaToPlantUml(const Schema& schema);

}  // namespace gramlink
