#pragma once

#include <string_view>

#include "grammar_ast.hpp"

namespace gramlink {

/// Parses one grammar file into a GrammarAst.
/// Throws SyntaxError on malformed input or duplicate declarations.
GrammarAst parseGrammar(std::string_view text, std::string origin);

}  // namespace gramlink
