#pragma once

#include <string>
#include <vector>

#include "diagnostics.hpp"

namespace gramlink {

/// Allowed link count for one association end: exact, unbounded, or a range.
struct Multiplicity {
    int lo = 0;
    int hi = -1;  // -1 = unbounded

    static Multiplicity one() { return {1, 1}; }
    static Multiplicity many() { return {0, -1}; }
    static Multiplicity range(int lo, int hi) { return {lo, hi}; }

    bool unbounded() const { return hi < 0; }
    bool contains(int n) const { return n >= lo && (unbounded() || n <= hi); }
    bool operator==(const Multiplicity&) const = default;

    std::string str() const;
};

/// Regular expression tree for ident token patterns.
/// Atoms are quoted literals and character ranges; combinators are
/// juxtaposition, '|' and the usual repetition suffixes.
struct PatternNode {
    enum class Kind { Sequence, Alternative, Repeat, Literal, CharRange };
    enum class Rep { Star, Plus, Optional };

    Kind kind = Kind::Sequence;
    std::vector<PatternNode> children;  // Sequence/Alternative/Repeat
    Rep rep = Rep::Star;                // Repeat
    std::string text;                   // Literal
    char lo = 0, hi = 0;                // CharRange
    Pos pos;
};

/// One element of a production right-hand side.
struct RhsNode {
    enum class Kind {
        Sequence,     // children in order
        Alternative,  // ordered choice over children
        Repetition,   // children[0] with a suffix
        Nonterminal,  // reference to a production or interface
        Ident,        // reference to an ident token
        Literal,      // quoted keyword or symbol, no AST effect
        Constant      // bracketed reserved words bound to an attribute
    };
    enum class Rep { Star, Plus, Optional };

    Kind kind = Kind::Sequence;
    std::vector<RhsNode> children;
    Rep rep = Rep::Star;
    std::string label;                  // explicit member name, empty = default
    std::string target;                 // rule or ident name (Nonterminal/Ident)
    std::string text;                   // Literal text
    bool bang = false;                  // literal was written with a '!' prefix
    std::vector<std::string> literals;  // Constant choices, nonempty
    Pos pos;
};

/// Member name an rhs element binds to: its label, else the target name
/// with the first character lowered.
std::string memberNameFor(const RhsNode& node);
std::string decapitalize(std::string name);

struct IdentDef {
    std::string name;
    PatternNode pattern;
    std::string transform;    // builtin name; empty = default ("string") or opaque
    bool opaque = false;      // transform given as a host-language body
    std::string opaqueParam;  // parameter name of the opaque form
    std::string resultType;   // declared result type of the opaque form
    std::string opaqueBody;   // body text, stored verbatim
    Pos pos;
};

struct Production {
    std::string name;
    std::string superRule;                // `extends` target, empty = none
    std::vector<std::string> interfaces;  // `implements` targets
    RhsNode rhs;
    Pos pos;
};

struct InterfaceDecl {
    std::string name;
    Pos pos;
};

struct AstAttribute {
    std::string name;
    std::string type;  // ident or rule name
    Pos pos;
};

struct AstMethod {
    std::string signature;  // verbatim text up to the body
    std::string body;       // verbatim body text
    Pos pos;
};

/// `ast X = ...;` block: abstract-syntax-only additions to a class or interface.
struct AstBlock {
    std::string target;
    std::vector<AstAttribute> attributes;
    std::vector<AstMethod> methods;
    Pos pos;
};

struct AssociationDecl {
    std::string sourceClass;
    std::string sourceRole;
    Multiplicity sourceMult;  // links per target node via the opposite role
    std::string targetClass;
    std::string targetRole;   // empty = default (source class name)
    Multiplicity targetMult;  // links per source node via the forward role
    Pos pos;
};

/// `concept simplereference` entry: resolve one association role by matching
/// a referencing attribute against a defining attribute, file-wide.
struct ReferenceSpec {
    std::string role;
    std::string sourceClass;
    std::string sourceAttr;
    std::string targetClass;
    std::string targetAttr;
    Pos pos;
};

struct GrammarAst {
    std::string packageName;  // dotted, empty = none
    std::string grammarName;
    std::vector<IdentDef> idents;
    std::vector<Production> productions;
    std::vector<InterfaceDecl> interfaces;
    std::vector<AstBlock> astBlocks;
    std::vector<AssociationDecl> associations;
    std::vector<ReferenceSpec> concepts;
    std::string origin;
    Pos pos;

    const Production* findProduction(const std::string& name) const;
    const InterfaceDecl* findInterface(const std::string& name) const;
    const IdentDef* findIdent(const std::string& name) const;
};

}  // namespace gramlink
