#pragma once

#include "schema.hpp"

namespace gramlink {

/// One derived member of a production before it is split into
/// attribute/composition/enum definitions.
struct MemberInfo {
    enum class Kind { Attribute, Composition, BoolConstant, EnumConstant };

    Kind kind = Kind::Attribute;
    std::string name;
    ValueType valueType = ValueType::String;  // Attribute
    std::string target;                       // Composition
    std::vector<std::string> literals;        // constants
    int minOcc = 0;
    int maxOcc = 0;  // -1 = unbounded
    Pos pos;
};

struct MemberAnalysis {
    std::vector<MemberInfo> members;
    std::vector<Diagnostic> diagnostics;
};

/// Structural occurrence analysis of a production body: member names, kinds,
/// value types and min/max occurrence counts. Elements with the same name and
/// compatible type contribute to the same member; incompatible reuse of a
/// name is reported as a diagnostic.
MemberAnalysis inferMembers(const Production& p, const GrammarAst& g);

/// list when the member can occur more than once, optional when it can be
/// absent, one otherwise.
Cardinality cardinalityFor(int minOcc, int maxOcc);

/// Value type produced by an ident token's transform. Null means one of the
/// predefined tokens (IDENT, STRING), which carry strings.
ValueType identValueType(const IdentDef* def);

struct DeriveResult {
    Schema schema;
    std::vector<Diagnostic> diagnostics;
};

/// Derives the abstract-syntax schema from a validated grammar.
DeriveResult deriveSchema(const GrammarAst& g);

}  // namespace gramlink
