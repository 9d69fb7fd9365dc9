#include "token_spec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace gramlink {

std::string valueToText(const Value& v) {
    if (const auto* s = std::get_if<std::string>(&v))
        return *s;
    if (const auto* i = std::get_if<std::int64_t>(&v))
        return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&v)) {
        char buf[64];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, *d);
        return std::string(buf, end);
    }
    if (const auto* b = std::get_if<bool>(&v))
        return *b ? "true" : "false";
    return std::get<EnumValue>(v).literal;
}

// --- Nfa ---------------------------------------------------------------------

int Nfa::addState() {
    states_.emplace_back();
    return static_cast<int>(states_.size()) - 1;
}

std::pair<int, int> Nfa::build(const PatternNode& p) {
    switch (p.kind) {
        case PatternNode::Kind::Literal: {
            int in = addState();
            int cur = in;
            for (char c : p.text) {
                int next = addState();
                auto b = static_cast<unsigned char>(c);
                states_[cur].edges.push_back({b, b, next});
                cur = next;
            }
            return {in, cur};
        }
        case PatternNode::Kind::CharRange: {
            int in = addState();
            int out = addState();
            states_[in].edges.push_back(
                {static_cast<unsigned char>(p.lo), static_cast<unsigned char>(p.hi), out});
            return {in, out};
        }
        case PatternNode::Kind::Sequence: {
            int in = addState();
            int cur = in;
            for (const auto& c : p.children) {
                auto [cin, cout] = build(c);
                states_[cur].eps.push_back(cin);
                cur = cout;
            }
            return {in, cur};
        }
        case PatternNode::Kind::Alternative: {
            int in = addState();
            int out = addState();
            for (const auto& c : p.children) {
                auto [cin, cout] = build(c);
                states_[in].eps.push_back(cin);
                states_[cout].eps.push_back(out);
            }
            return {in, out};
        }
        case PatternNode::Kind::Repeat: {
            auto [cin, cout] = build(p.children.front());
            int in = addState();
            int out = addState();
            states_[in].eps.push_back(cin);
            switch (p.rep) {
                case PatternNode::Rep::Star:
                    states_[in].eps.push_back(out);
                    states_[cout].eps.push_back(cin);
                    states_[cout].eps.push_back(out);
                    break;
                case PatternNode::Rep::Plus:
                    states_[cout].eps.push_back(cin);
                    states_[cout].eps.push_back(out);
                    break;
                case PatternNode::Rep::Optional:
                    states_[in].eps.push_back(out);
                    states_[cout].eps.push_back(out);
                    break;
            }
            return {in, out};
        }
    }
    int s = addState();
    return {s, s};
}

Nfa Nfa::compile(const PatternNode& pattern) {
    Nfa nfa;
    auto [in, out] = nfa.build(pattern);
    nfa.start_ = in;
    nfa.states_[out].accept = true;
    return nfa;
}

void Nfa::closure(std::vector<int>& set, std::vector<char>& mark) const {
    for (size_t i = 0; i < set.size(); ++i)
        for (int next : states_[set[i]].eps)
            if (!mark[next]) {
                mark[next] = 1;
                set.push_back(next);
            }
}

int Nfa::longestMatch(std::string_view text, size_t from) const {
    std::vector<char> mark(states_.size(), 0);
    std::vector<int> frontier{start_};
    mark[start_] = 1;
    closure(frontier, mark);

    int best = -1;
    auto accepting = [&](const std::vector<int>& set) {
        for (int s : set)
            if (states_[s].accept)
                return true;
        return false;
    };
    if (accepting(frontier))
        best = 0;

    size_t i = from;
    while (i < text.size() && !frontier.empty()) {
        auto c = static_cast<unsigned char>(text[i]);
        std::vector<char> nextMark(states_.size(), 0);
        std::vector<int> next;
        for (int s : frontier)
            for (const auto& e : states_[s].edges)
                if (c >= e.lo && c <= e.hi && !nextMark[e.to]) {
                    nextMark[e.to] = 1;
                    next.push_back(e.to);
                }
        closure(next, nextMark);
        frontier = std::move(next);
        mark = std::move(nextMark);
        ++i;
        if (accepting(frontier))
            best = static_cast<int>(i - from);
    }
    return best;
}

// --- TokenSpec ---------------------------------------------------------------

namespace {

PatternNode range(char lo, char hi) {
    PatternNode n;
    n.kind = PatternNode::Kind::CharRange;
    n.lo = lo;
    n.hi = hi;
    return n;
}

PatternNode literalPattern(std::string text) {
    PatternNode n;
    n.kind = PatternNode::Kind::Literal;
    n.text = std::move(text);
    return n;
}

PatternNode alt(std::vector<PatternNode> children) {
    PatternNode n;
    n.kind = PatternNode::Kind::Alternative;
    n.children = std::move(children);
    return n;
}

PatternNode seq(std::vector<PatternNode> children) {
    PatternNode n;
    n.kind = PatternNode::Kind::Sequence;
    n.children = std::move(children);
    return n;
}

PatternNode repeat(PatternNode child, PatternNode::Rep rep) {
    PatternNode n;
    n.kind = PatternNode::Kind::Repeat;
    n.rep = rep;
    n.children.push_back(std::move(child));
    return n;
}

// letter or underscore, then letters, digits, underscores
PatternNode predefinedIdentPattern() {
    auto head = alt({range('a', 'z'), range('A', 'Z'), literalPattern("_")});
    auto tail = alt({range('a', 'z'), range('A', 'Z'), range('0', '9'), literalPattern("_")});
    return seq({head, repeat(tail, PatternNode::Rep::Star)});
}

// double-quoted, backslash escapes; bytes above 0x7f pass through so that
// UTF-8 content survives
PatternNode predefinedStringPattern() {
    auto plain = alt({range(' ', '!'), range('#', '['), range(']', '~'), literalPattern("\t"),
                      range('\x80', '\xff')});
    auto escaped = seq({literalPattern("\\"), range(' ', '~')});
    auto body = repeat(alt({plain, escaped}), PatternNode::Rep::Star);
    return seq({literalPattern("\""), body, literalPattern("\"")});
}

// the transform actually applied: an explicit builtin name, a builtin picked
// by the ident's own name for opaque bodies, else a default by result type
std::string effectiveTransform(const IdentDef& def) {
    if (!def.opaque)
        return def.transform.empty() ? "string" : def.transform;
    std::string lowered = def.name;
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    static const std::set<std::string> builtins = {"string", "int", "float", "cardinality"};
    if (builtins.count(lowered))
        return lowered;
    if (def.resultType == "int")
        return "int";
    if (def.resultType == "float" || def.resultType == "double")
        return "float";
    return "string";
}

void collectLiterals(const RhsNode& n, std::vector<std::string>& out) {
    if (n.kind == RhsNode::Kind::Literal)
        out.push_back(n.text);
    if (n.kind == RhsNode::Kind::Constant)
        for (const auto& l : n.literals)
            out.push_back(l);
    for (const auto& c : n.children)
        collectLiterals(c, out);
}

}  // namespace

bool TokenSpec::isKeyword(const std::string& text) const {
    return std::find(keywords.begin(), keywords.end(), text) != keywords.end();
}

TokenSpec buildTokenSpec(const GrammarAst& g) {
    TokenSpec spec;
    for (const auto& d : g.idents)
        spec.identTokens.push_back({d.name, Nfa::compile(d.pattern), effectiveTransform(d)});
    if (!g.findIdent("IDENT"))
        spec.identTokens.push_back(
            {"IDENT", Nfa::compile(predefinedIdentPattern()), "string"});
    if (!g.findIdent("STRING"))
        spec.identTokens.push_back(
            {"STRING", Nfa::compile(predefinedStringPattern()), "stringliteral"});

    // every literal is reserved: word-shaped ones as keywords, the rest as
    // punctuation; word-shaped means the effective IDENT pattern matches it
    const Nfa* identNfa = nullptr;
    for (const auto& t : spec.identTokens)
        if (t.name == "IDENT")
            identNfa = &t.nfa;

    std::vector<std::string> literals;
    for (const auto& p : g.productions)
        collectLiterals(p.rhs, literals);
    std::set<std::string> seen;
    for (const auto& text : literals) {
        if (text.empty() || !seen.insert(text).second)
            continue;
        bool wordShaped =
            identNfa && identNfa->longestMatch(text, 0) == static_cast<int>(text.size());
        if (wordShaped)
            spec.keywords.push_back(text);
        else
            spec.punctuation.push_back(text);
    }
    return spec;
}

// --- transforms ----------------------------------------------------------------

Value applyTransform(const std::string& name, const std::string& lexeme, Pos pos,
                     const std::string& origin) {
    auto parseInt = [&](const std::string& text) -> std::int64_t {
        std::int64_t value = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || p != text.data() + text.size())
            throw SyntaxError({Severity::Error,
                               "cannot convert '" + text + "' to an integer", origin, pos});
        return value;
    };
    if (name == "string")
        return lexeme;
    if (name == "int")
        return parseInt(lexeme);
    if (name == "cardinality") {
        if (lexeme == "*")
            return static_cast<std::int64_t>(-1);
        return parseInt(lexeme);
    }
    if (name == "float") {
        try {
            size_t used = 0;
            double value = std::stod(lexeme, &used);
            if (used != lexeme.size())
                throw std::invalid_argument(lexeme);
            return value;
        } catch (const std::exception&) {
            throw SyntaxError(
                {Severity::Error, "cannot convert '" + lexeme + "' to a float", origin, pos});
        }
    }
    if (name == "stringliteral") {
        // strip quotes, resolve escapes
        std::string out;
        for (size_t i = 1; i + 1 < lexeme.size(); ++i) {
            char c = lexeme[i];
            if (c == '\\' && i + 2 < lexeme.size()) {
                ++i;
                switch (lexeme[i]) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case 'r': out += '\r'; break;
                    default: out += lexeme[i];
                }
            } else {
                out += c;
            }
        }
        return out;
    }
    throw SyntaxError({Severity::Error, "unknown transform '" + name + "'", origin, pos});
}

// --- tokenize ------------------------------------------------------------------

std::string Token::describe() const {
    if (kind == Kind::Ident)
        return identName;
    return "'" + lexeme + "'";
}

std::vector<Token> tokenize(const TokenSpec& spec, std::string_view text, std::string origin) {
    std::vector<Token> out;
    size_t i = 0;
    Pos pos{1, 1};
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (text[i] == '\n') {
                pos.line++;
                pos.column = 1;
            } else {
                pos.column++;
            }
            i++;
        }
    };

    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
            Pos start = pos;
            advance(2);
            while (i + 1 < text.size() && !(text[i] == '*' && text[i + 1] == '/'))
                advance(1);
            if (i + 1 >= text.size())
                throw SyntaxError(
                    {Severity::Error, "unterminated block comment", origin, start});
            advance(2);
            continue;
        }

        // longest literal (keyword or punctuation)
        size_t litLen = 0;
        for (const auto& lits : {spec.keywords, spec.punctuation})
            for (const auto& lit : lits)
                if (lit.size() > litLen && text.compare(i, lit.size(), lit) == 0)
                    litLen = lit.size();

        // longest ident-token match; earlier declarations win ties
        int identLen = -1;
        const IdentTokenSpec* identSpec = nullptr;
        for (const auto& t : spec.identTokens) {
            int len = t.nfa.longestMatch(text, i);
            if (len > identLen) {
                identLen = len;
                identSpec = &t;
            }
        }

        Token tok;
        tok.pos = pos;
        if (identLen > static_cast<int>(litLen) && identLen > 0) {
            tok.kind = Token::Kind::Ident;
            tok.identName = identSpec->name;
            tok.lexeme = std::string(text.substr(i, identLen));
            tok.value = applyTransform(identSpec->transform, tok.lexeme, pos, origin);
            advance(identLen);
        } else if (litLen > 0) {
            // literals beat ident tokens of the same length
            tok.lexeme = std::string(text.substr(i, litLen));
            tok.kind = spec.isKeyword(tok.lexeme) ? Token::Kind::Keyword : Token::Kind::Punct;
            advance(litLen);
        } else {
            throw SyntaxError(
                {Severity::Error, std::string("unlexable character '") + c + "'", origin, pos});
        }
        out.push_back(std::move(tok));
    }
    return out;
}

}  // namespace gramlink
