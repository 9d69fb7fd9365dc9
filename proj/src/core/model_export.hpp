#pragma once

#include <json.hpp>

#include "resolve.hpp"

namespace gramlink {

/// Serializes a resolved model to the graph-document JSON: nodes in textual
/// pre-order with ids equal to pre-order indices, links sorted by
/// (association, sourceId, targetId), diagnostics appended. Byte-deterministic
/// for identical inputs.
nlohmann::ordered_json exportModel(const ModelTree& tree, const LinkTable& links,
                                   const Schema& schema,
                                   const std::vector<Diagnostic>& diagnostics);

std::string documentToString(const nlohmann::ordered_json& doc);

}  // namespace gramlink
