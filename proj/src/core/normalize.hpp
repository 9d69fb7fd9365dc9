#pragma once

#include <unordered_map>

#include "grammar_ast.hpp"

namespace gramlink {

/// One parseable nonterminal. Nonterminals first try the listed rules — the
/// direct sub-rules of a production, or the implementors of an interface —
/// in declaration order, then the production's own body. Sub-rule bodies stay
/// untouched; matching one yields a node of the sub-rule's class.
struct NormRule {
    std::string name;
    bool isInterface = false;
    std::vector<std::string> tryFirst;
    const RhsNode* body = nullptr;  // null for interfaces
};

struct NormalizedGrammar {
    std::vector<NormRule> rules;
    std::unordered_map<std::string, int> index;
    std::string startRule;  // first production
    const GrammarAst* grammar = nullptr;

    const NormRule* find(const std::string& name) const {
        auto it = index.find(name);
        return it == index.end() ? nullptr : &rules[it->second];
    }
};

struct ExpandResult {
    NormalizedGrammar normalized;
    std::vector<Diagnostic> diagnostics;
};

/// Expands rule inheritance and interfaces into dispatch lists. The result
/// keeps pointers into `g`, which must outlive it.
ExpandResult expandInheritance(const GrammarAst& g);

}  // namespace gramlink
