#include "schema_export.hpp"

#include <json.hpp>

namespace gramlink {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string multText(Cardinality c) {
    switch (c) {
        case Cardinality::One: return "1";
        case Cardinality::Optional: return "0..1";
        case Cardinality::List: return "0..*";
    }
    return "?";
}

ordered_json attributesJson(const std::vector<AttributeDef>& attrs) {
    ordered_json out = ordered_json::array();
    for (const auto& a : attrs)
        out.push_back({{"name", a.name},
                       {"type", a.typeName()},
                       {"cardinality", cardinalityName(a.cardinality)}});
    return out;
}

ordered_json methodsJson(const std::vector<MethodDef>& methods) {
    ordered_json out = ordered_json::array();
    for (const auto& m : methods)
        out.push_back({{"signature", m.signature}, {"body", m.body}});
    return out;
}

}  // namespace

std::string schemaToJson(const Schema& schema) {
    ordered_json doc;
    doc["grammar"] = schema.grammarName;
    doc["package"] = schema.packageName;

    doc["classes"] = ordered_json::array();
    for (const auto& c : schema.classes) {
        ordered_json cls;
        cls["name"] = c.name;
        cls["superClass"] = c.superClass.empty() ? ordered_json() : ordered_json(c.superClass);
        cls["interfaces"] = c.interfaces;
        cls["attributes"] = attributesJson(c.attributes);
        cls["compositions"] = ordered_json::array();
        for (const auto& m : c.compositions)
            cls["compositions"].push_back({{"name", m.name},
                                           {"target", m.target},
                                           {"cardinality", cardinalityName(m.cardinality)}});
        cls["methods"] = methodsJson(c.methods);
        doc["classes"].push_back(std::move(cls));
    }

    doc["interfaces"] = ordered_json::array();
    for (const auto& i : schema.interfaces)
        doc["interfaces"].push_back({{"name", i.name},
                                     {"attributes", attributesJson(i.attributes)},
                                     {"methods", methodsJson(i.methods)}});

    doc["enums"] = ordered_json::array();
    for (const auto& e : schema.enums)
        doc["enums"].push_back({{"name", e.name}, {"literals", e.literals}});

    doc["associations"] = ordered_json::array();
    for (const auto& a : schema.associations) {
        auto end = [](const AssociationEnd& e) {
            return ordered_json{
                {"class", e.className}, {"role", e.role}, {"multiplicity", e.mult.str()}};
        };
        doc["associations"].push_back(
            {{"forward", end(a.forward)}, {"opposite", end(a.opposite)}});
    }

    doc["references"] = ordered_json::array();
    for (const auto& r : schema.references)
        doc["references"].push_back(
            {{"role", r.role},
             {"source", {{"class", r.sourceClass}, {"attribute", r.sourceAttr}}},
             {"target", {{"class", r.targetClass}, {"attribute", r.targetAttr}}}});

    return doc.dump(2) + "\n";
}

std::string schemaToPlantUml(const Schema& schema) {
    std::string out = "@startuml\n";
    for (const auto& i : schema.interfaces) {
        if (i.attributes.empty()) {
            out += "interface " + i.name + "\n";
            continue;
        }
        out += "interface " + i.name + " {\n";
        for (const auto& a : i.attributes)
            out += "  " + a.name + " : " + a.typeName() +
                   (a.cardinality == Cardinality::One ? "" : " [" + multText(a.cardinality) + "]") +
                   "\n";
        out += "}\n";
    }
    for (const auto& e : schema.enums) {
        out += "enum " + e.name + " {\n";
        for (const auto& l : e.literals)
            out += "  " + l + "\n";
        out += "}\n";
    }
    for (const auto& c : schema.classes) {
        if (c.attributes.empty()) {
            out += "class " + c.name + "\n";
            continue;
        }
        out += "class " + c.name + " {\n";
        for (const auto& a : c.attributes)
            out += "  " + a.name + " : " + a.typeName() +
                   (a.cardinality == Cardinality::One ? "" : " [" + multText(a.cardinality) + "]") +
                   "\n";
        out += "}\n";
    }
    for (const auto& c : schema.classes) {
        if (!c.superClass.empty())
            out += c.name + " --|> " + c.superClass + "\n";
        for (const auto& i : c.interfaces)
            out += c.name + " ..|> " + i + "\n";
        for (const auto& m : c.compositions)
            out += c.name + " *-- \"" + multText(m.cardinality) + "\" " + m.target + " : " +
                   m.name + "\n";
    }
    for (const auto& a : schema.associations)
        out += a.forward.className + " \"" + a.opposite.mult.str() + "\" --> \"" +
               a.forward.mult.str() + "\" " + a.opposite.className + " : " + a.forward.role +
               "/" + a.opposite.role + "\n";
    out += "@enduml\n";
    return out;
}

}  // namespace gramlink
