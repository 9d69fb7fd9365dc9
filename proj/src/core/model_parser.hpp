#pragma once

#include "model.hpp"
#include "normalize.hpp"

namespace gramlink {

struct ParseOptions {
    bool memoize = true;
};

/// Memoizing recursive-descent parse over a token stream: ordered choice,
/// full backtracking within a rule, greedy repetition. The whole stream must
/// be consumed. Throws SyntaxError describing the farthest failure point and
/// the tokens expected there.
ModelTree parseModel(const NormalizedGrammar& ng, const std::vector<Token>& tokens,
                     const std::string& origin, const ParseOptions& options = {});

}  // namespace gramlink
