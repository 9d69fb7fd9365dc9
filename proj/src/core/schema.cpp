#include "schema.hpp"

namespace gramlink {

std::string valueTypeName(ValueType t) {
    switch (t) {
        case ValueType::String: return "string";
        case ValueType::Int: return "int";
        case ValueType::Float: return "float";
        case ValueType::Boolean: return "boolean";
        case ValueType::Enum: return "enum";
    }
    return "?";
}

std::string cardinalityName(Cardinality c) {
    switch (c) {
        case Cardinality::One: return "one";
        case Cardinality::Optional: return "optional";
        case Cardinality::List: return "list";
    }
    return "?";
}

std::string AttributeDef::typeName() const {
    return type == ValueType::Enum ? enumName : valueTypeName(type);
}

const ClassDef* Schema::findClass(const std::string& name) const {
    for (const auto& c : classes)
        if (c.name == name)
            return &c;
    return nullptr;
}

const InterfaceDef* Schema::findInterface(const std::string& name) const {
    for (const auto& i : interfaces)
        if (i.name == name)
            return &i;
    return nullptr;
}

const EnumDef* Schema::findEnum(const std::string& name) const {
    for (const auto& e : enums)
        if (e.name == name)
            return &e;
    return nullptr;
}

bool Schema::isSubtypeOf(const std::string& className, const std::string& typeName) const {
    std::string cur = className;
    int guard = 0;
    while (!cur.empty() && guard++ < 1000) {
        if (cur == typeName)
            return true;
        const ClassDef* cls = findClass(cur);
        if (!cls)
            return false;
        for (const auto& i : cls->interfaces)
            if (i == typeName)
                return true;
        cur = cls->superClass;
    }
    return false;
}

std::vector<AttributeDef> Schema::effectiveAttributes(const std::string& className) const {
    std::vector<AttributeDef> out;
    const ClassDef* cls = findClass(className);
    if (!cls)
        return out;
    if (!cls->superClass.empty())
        out = effectiveAttributes(cls->superClass);
    for (const auto& a : cls->attributes)
        out.push_back(a);
    return out;
}

std::vector<CompositionDef> Schema::effectiveCompositions(const std::string& className) const {
    std::vector<CompositionDef> out;
    const ClassDef* cls = findClass(className);
    if (!cls)
        return out;
    if (!cls->superClass.empty())
        out = effectiveCompositions(cls->superClass);
    for (const auto& c : cls->compositions)
        out.push_back(c);
    return out;
}

}  // namespace gramlink
