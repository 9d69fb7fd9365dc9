#include "grammar_lexer.hpp"

#include <cctype>

namespace gramlink {

namespace {

bool isNameStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool isNameChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::string GToken::describe() const {
    switch (kind) {
        case GTok::Name: return "'" + text + "'";
        case GTok::Int: return "'" + text + "'";
        case GTok::String: return "string literal";
        case GTok::Char: return "character literal";
        case GTok::Punct: return "'" + text + "'";
        case GTok::End: return "end of file";
    }
    return "?";
}

GrammarLexer::GrammarLexer(std::string_view text, std::string origin)
    : text_(text), origin_(std::move(origin)) {}

void GrammarLexer::fail(Pos pos, const std::string& message) const {
    throw SyntaxError({Severity::Error, message, origin_, pos});
}

void GrammarLexer::advance() {
    if (i_ >= text_.size())
        return;
    if (text_[i_] == '\n') {
        pos_.line++;
        pos_.column = 1;
    } else {
        pos_.column++;
    }
    i_++;
}

int GrammarLexer::lineCount() const {
    int lines = 1;
    for (char c : text_)
        if (c == '\n')
            lines++;
    return lines;
}

void GrammarLexer::skipTrivia() {
    while (i_ < text_.size()) {
        char c = cur();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance();
        } else if (c == '/' && peekAt(1) == '/') {
            while (i_ < text_.size() && cur() != '\n')
                advance();
        } else if (c == '/' && peekAt(1) == '*') {
            Pos start = pos_;
            advance();
            advance();
            while (i_ < text_.size() && !(cur() == '*' && peekAt(1) == '/'))
                advance();
            if (i_ >= text_.size())
                fail(start, "unterminated block comment");
            advance();
            advance();
        } else {
            break;
        }
    }
}

std::string GrammarLexer::lexQuoted(char quote) {
    Pos start = pos_;
    advance();  // opening quote
    std::string out;
    while (true) {
        if (i_ >= text_.size() || cur() == '\n')
            fail(start, std::string("unterminated ") + (quote == '"' ? "string" : "character") +
                            " literal");
        char c = cur();
        if (c == quote) {
            advance();
            return out;
        }
        if (c == '\\') {
            advance();
            char e = cur();
            switch (e) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case 'r': out += '\r'; break;
                case '\\': out += '\\'; break;
                case '\'': out += '\''; break;
                case '"': out += '"'; break;
                default: fail(pos_, std::string("unknown escape '\\") + e + "'");
            }
            advance();
        } else {
            out += c;
            advance();
        }
    }
}

GToken GrammarLexer::next() {
    skipTrivia();
    GToken tok;
    tok.pos = pos_;
    if (i_ >= text_.size()) {
        tok.kind = GTok::End;
        return tok;
    }
    char c = cur();
    if (isNameStart(c)) {
        tok.kind = GTok::Name;
        while (i_ < text_.size() && isNameChar(cur())) {
            tok.text += cur();
            advance();
        }
        return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
        tok.kind = GTok::Int;
        while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(cur()))) {
            tok.text += cur();
            advance();
        }
        return tok;
    }
    if (c == '"') {
        tok.kind = GTok::String;
        tok.text = lexQuoted('"');
        return tok;
    }
    if (c == '\'') {
        tok.kind = GTok::Char;
        tok.text = lexQuoted('\'');
        if (tok.text.empty())
            fail(tok.pos, "empty character literal");
        return tok;
    }

    tok.kind = GTok::Punct;
    if (c == '<' && peekAt(1) == '-' && peekAt(2) == '>') {
        tok.text = "<->";
        advance(); advance(); advance();
        return tok;
    }
    if (c == '-' && peekAt(1) == '>') {
        tok.text = "->";
        advance(); advance();
        return tok;
    }
    if (c == '.' && peekAt(1) == '.') {
        tok.text = "..";
        advance(); advance();
        return tok;
    }
    static constexpr std::string_view kSingle = "{}()[];:,.|*+?=!<>-";
    if (kSingle.find(c) != std::string_view::npos) {
        tok.text = c;
        advance();
        return tok;
    }
    fail(pos_, std::string("unexpected character '") + c + "'");
}

std::string GrammarLexer::rawUntilBrace() {
    std::string out;
    while (i_ < text_.size() && cur() != '{') {
        out += cur();
        advance();
    }
    if (i_ >= text_.size())
        fail(pos_, "expected '{' before end of file");
    // trim surrounding whitespace; the interior stays verbatim
    size_t b = out.find_first_not_of(" \t\r\n");
    size_t e = out.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : out.substr(b, e - b + 1);
}

std::string GrammarLexer::rawBalancedBraces() {
    Pos start = pos_;
    std::string out;
    int depth = 1;
    while (i_ < text_.size()) {
        char c = cur();
        if (c == '"' || c == '\'') {
            char quote = c;
            out += c;
            advance();
            while (i_ < text_.size() && cur() != quote) {
                if (cur() == '\\') {
                    out += cur();
                    advance();
                    if (i_ >= text_.size())
                        break;
                }
                out += cur();
                advance();
            }
            if (i_ >= text_.size())
                fail(start, "unterminated literal in code block");
            out += cur();
            advance();
            continue;
        }
        if (c == '/' && peekAt(1) == '/') {
            while (i_ < text_.size() && cur() != '\n') {
                out += cur();
                advance();
            }
            continue;
        }
        if (c == '/' && peekAt(1) == '*') {
            out += cur(); advance();
            out += cur(); advance();
            while (i_ < text_.size() && !(cur() == '*' && peekAt(1) == '/')) {
                out += cur();
                advance();
            }
            if (i_ < text_.size()) {
                out += cur(); advance();
                out += cur(); advance();
            }
            continue;
        }
        if (c == '{')
            depth++;
        if (c == '}') {
            depth--;
            if (depth == 0) {
                advance();
                return out;
            }
        }
        out += c;
        advance();
    }
    fail(start, "unterminated code block");
}

}  // namespace gramlink
