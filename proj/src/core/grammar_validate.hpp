#pragma once

#include "grammar_ast.hpp"

namespace gramlink {

/// Checks a parsed grammar. Returns every problem found; an empty list means
/// the grammar is accepted. Covers undefined references, cyclic inheritance,
/// left recursion (direct or through rules that can match nothing), invalid
/// ident definitions, member type conflicts, and bad association/concept
/// declarations.
std::vector<Diagnostic> validateGrammar(const GrammarAst& g);

}  // namespace gramlink
