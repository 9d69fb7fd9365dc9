#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "grammar_ast.hpp"

namespace gramlink {

struct EnumValue {
    std::string literal;
    bool operator==(const EnumValue&) const = default;
};

/// Typed attribute value carried by tokens and model nodes.
using Value = std::variant<std::string, std::int64_t, double, bool, EnumValue>;

std::string valueToText(const Value& v);

/// Compiled character automaton for one ident pattern.
class Nfa {
public:
    static Nfa compile(const PatternNode& pattern);

    /// Length of the longest match starting at `from`, -1 when none.
    int longestMatch(std::string_view text, size_t from) const;

private:
    struct Edge {
        unsigned char lo, hi;
        int to;
    };
    struct State {
        std::vector<Edge> edges;
        std::vector<int> eps;
        bool accept = false;
    };
    std::vector<State> states_;
    int start_ = 0;

    int addState();
    // returns (in, out) of the fragment
    std::pair<int, int> build(const PatternNode& p);
    void closure(std::vector<int>& set, std::vector<char>& mark) const;
};

struct IdentTokenSpec {
    std::string name;
    Nfa nfa;
    std::string transform;  // registry key actually applied while lexing
};

/// Lexer description derived from a grammar: ident token automata plus the
/// literals of all productions, split into keywords (word-shaped, reserved)
/// and punctuation.
struct TokenSpec {
    std::vector<IdentTokenSpec> identTokens;  // declaration order, predefined last
    std::vector<std::string> keywords;
    std::vector<std::string> punctuation;

    bool isKeyword(const std::string& text) const;
};

TokenSpec buildTokenSpec(const GrammarAst& g);

struct Token {
    enum class Kind { Ident, Keyword, Punct };

    Kind kind = Kind::Punct;
    std::string identName;  // token-type name for Kind::Ident
    std::string lexeme;     // verbatim source text
    Value value;            // typed value, ident tokens only
    Pos pos;

    bool isIdent(std::string_view name) const {
        return kind == Kind::Ident && identName == name;
    }
    bool isLiteral(std::string_view text) const {
        return kind != Kind::Ident && lexeme == text;
    }
    std::string describe() const;
};

/// Maximal-munch scan of a model file. Literals win ties against ident
/// tokens; ident tokens are tried in declaration order. Whitespace and
/// // and /* */ comments are skipped.
/// Throws SyntaxError on unlexable input or failing transforms.
std::vector<Token> tokenize(const TokenSpec& spec, std::string_view text, std::string origin);

/// Applies a builtin transform: string (identity), int, float, cardinality
/// ('*' maps to -1), stringliteral (strip quotes, unescape).
/// Throws SyntaxError on conversion failure.
Value applyTransform(const std::string& name, const std::string& lexeme, Pos pos,
                     const std::string& origin);

}  // namespace gramlink
