#pragma once

#include <string>
#include <vector>

#include "grammar_ast.hpp"

namespace gramlink {

enum class ValueType { String, Int, Float, Boolean, Enum };
enum class Cardinality { One, Optional, List };

std::string valueTypeName(ValueType t);
std::string cardinalityName(Cardinality c);

struct AttributeDef {
    std::string name;
    ValueType type = ValueType::String;
    std::string enumName;  // set when type == Enum
    Cardinality cardinality = Cardinality::One;

    /// "string", "int", ... or the enum name.
    std::string typeName() const;
};

struct CompositionDef {
    std::string name;
    std::string target;  // class or interface
    Cardinality cardinality = Cardinality::One;
};

struct MethodDef {
    std::string signature;
    std::string body;
};

struct ClassDef {
    std::string name;
    std::string superClass;  // empty = none
    std::vector<std::string> interfaces;
    std::vector<AttributeDef> attributes;      // own members only
    std::vector<CompositionDef> compositions;  // own members only
    std::vector<MethodDef> methods;
};

struct InterfaceDef {
    std::string name;
    std::vector<AttributeDef> attributes;  // added through ast blocks
    std::vector<MethodDef> methods;
};

struct EnumDef {
    std::string name;  // generated <Class>_<attr>
    std::vector<std::string> literals;
};

/// One navigable end: nodes of `className` hold `mult`-many links via `role`.
struct AssociationEnd {
    std::string className;
    std::string role;
    Multiplicity mult;
};

struct AssociationDef {
    AssociationEnd forward;
    AssociationEnd opposite;

    std::string id() const { return forward.className + "." + forward.role; }
};

struct RefSpecDef {
    std::string role;
    std::string sourceClass;
    std::string sourceAttr;
    std::string targetClass;
    std::string targetAttr;
};

struct Schema {
    std::string grammarName;
    std::string packageName;
    std::vector<ClassDef> classes;
    std::vector<InterfaceDef> interfaces;
    std::vector<EnumDef> enums;
    std::vector<AssociationDef> associations;
    std::vector<RefSpecDef> references;

    const ClassDef* findClass(const std::string& name) const;
    const InterfaceDef* findInterface(const std::string& name) const;
    const EnumDef* findEnum(const std::string& name) const;

    /// True when `className` equals `typeName`, inherits from it, or
    /// implements it (directly or through a superclass).
    bool isSubtypeOf(const std::string& className, const std::string& typeName) const;

    /// Members including those inherited from superclasses.
    std::vector<AttributeDef> effectiveAttributes(const std::string& className) const;
    std::vector<CompositionDef> effectiveCompositions(const std::string& className) const;
};

}  // namespace gramlink
