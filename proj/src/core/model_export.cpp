#include "model_export.hpp"

#include <algorithm>

namespace gramlink {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json valueJson(const Value& v) {
    if (const auto* s = std::get_if<std::string>(&v))
        return *s;
    if (const auto* i = std::get_if<std::int64_t>(&v))
        return *i;
    if (const auto* d = std::get_if<double>(&v))
        return *d;
    if (const auto* b = std::get_if<bool>(&v))
        return *b;
    return std::get<EnumValue>(v).literal;
}

}  // namespace

ordered_json exportModel(const ModelTree& tree, const LinkTable& links, const Schema& schema,
                         const std::vector<Diagnostic>& diagnostics) {
    ordered_json doc;
    doc["nodes"] = ordered_json::array();
    for (const ModelNode* node : tree.preorder) {
        ordered_json n;
        n["class"] = node->classRef;
        n["id"] = node->id;
        n["attributes"] = ordered_json::object();
        for (const auto& def : schema.effectiveAttributes(node->classRef)) {
            auto it = node->attributes.find(def.name);
            if (it == node->attributes.end() || it->second.empty())
                continue;
            if (def.cardinality == Cardinality::List) {
                ordered_json list = ordered_json::array();
                for (const auto& v : it->second)
                    list.push_back(valueJson(v.value));
                n["attributes"][def.name] = std::move(list);
            } else {
                n["attributes"][def.name] = valueJson(it->second.front().value);
            }
        }
        n["children"] = ordered_json::object();
        for (const auto& def : schema.effectiveCompositions(node->classRef)) {
            auto it = node->children.find(def.name);
            if (it == node->children.end() || it->second.empty())
                continue;
            ordered_json ids = ordered_json::array();
            for (const auto& child : it->second)
                ids.push_back(child->id);
            n["children"][def.name] = std::move(ids);
        }
        doc["nodes"].push_back(std::move(n));
    }

    struct LinkRow {
        std::string assoc;
        std::string role;
        int source;
        int target;
    };
    std::vector<LinkRow> rows;
    for (const auto& assoc : schema.associations) {
        if (!links.resolvedAssociations.count(assoc.id()))
            continue;
        for (const ModelNode* node : tree.preorder)
            for (const ModelNode* target : links.linksOf(node, assoc.forward.role))
                rows.push_back({assoc.id(), assoc.forward.role, node->id, target->id});
    }
    std::sort(rows.begin(), rows.end(), [](const LinkRow& a, const LinkRow& b) {
        return std::tie(a.assoc, a.source, a.target) < std::tie(b.assoc, b.source, b.target);
    });
    doc["links"] = ordered_json::array();
    for (const auto& r : rows)
        doc["links"].push_back({{"association", r.assoc},
                                {"role", r.role},
                                {"sourceId", r.source},
                                {"targetId", r.target}});

    doc["diagnostics"] = ordered_json::array();
    for (const auto& d : diagnostics)
        doc["diagnostics"].push_back(
            {{"severity", d.severity == Severity::Error ? "error" : "warning"},
             {"message", d.message},
             {"file", d.origin},
             {"line", d.pos.line},
             {"column", d.pos.column}});
    return doc;
}

std::string documentToString(const ordered_json& doc) {
    return doc.dump(2) + "\n";
}

}  // namespace gramlink
