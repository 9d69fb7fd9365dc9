#pragma once

#include <string>
#include <string_view>

#include "diagnostics.hpp"

namespace gramlink {

enum class GTok {
    Name,    // identifier
    Int,     // digit run
    String,  // double-quoted literal, text holds the unescaped content
    Char,    // single-quoted literal, text holds the unescaped content
    Punct,   // operator or delimiter, text holds its spelling
    End
};

struct GToken {
    GTok kind = GTok::End;
    std::string text;
    Pos pos;

    bool is(GTok k) const { return kind == k; }
    bool isPunct(std::string_view p) const { return kind == GTok::Punct && text == p; }
    bool isName(std::string_view n) const { return kind == GTok::Name && text == n; }
    std::string describe() const;
};

/// Pull lexer for grammar files. Skips whitespace and // and /* */ comments.
/// Two raw-capture modes take over the character stream for host-language
/// code bodies, which are stored verbatim rather than tokenized.
class GrammarLexer {
public:
    GrammarLexer(std::string_view text, std::string origin);

    GToken next();

    /// Raw text from the current position up to (not including) the next '{'.
    std::string rawUntilBrace();

    /// Raw text up to the '}' matching an already consumed '{'. Braces inside
    /// string/char literals and comments do not count.
    std::string rawBalancedBraces();

    const std::string& origin() const { return origin_; }
    int lineCount() const;

private:
    [[noreturn]] void fail(Pos pos, const std::string& message) const;
    void skipTrivia();
    char cur() const { return i_ < text_.size() ? text_[i_] : '\0'; }
    char peekAt(size_t off) const {
        return i_ + off < text_.size() ? text_[i_ + off] : '\0';
    }
    void advance();
    std::string lexQuoted(char quote);

    std::string_view text_;
    std::string origin_;
    size_t i_ = 0;
    Pos pos_{1, 1};
};

}  // namespace gramlink
