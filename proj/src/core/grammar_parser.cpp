#include "grammar_parser.hpp"

#include <cctype>
#include <deque>
#include <set>
#include <unordered_map>

#include "grammar_lexer.hpp"

namespace gramlink {

std::string decapitalize(std::string name) {
    if (!name.empty())
        name[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(name[0])));
    return name;
}

std::string memberNameFor(const RhsNode& node) {
    if (!node.label.empty())
        return node.label;
    if (node.kind == RhsNode::Kind::Constant)
        return node.literals.empty() ? std::string() : decapitalize(node.literals.front());
    return decapitalize(node.target);
}

const Production* GrammarAst::findProduction(const std::string& name) const {
    for (const auto& p : productions)
        if (p.name == name)
            return &p;
    return nullptr;
}

const InterfaceDecl* GrammarAst::findInterface(const std::string& name) const {
    for (const auto& i : interfaces)
        if (i.name == name)
            return &i;
    return nullptr;
}

const IdentDef* GrammarAst::findIdent(const std::string& name) const {
    for (const auto& d : idents)
        if (d.name == name)
            return &d;
    return nullptr;
}

std::string Multiplicity::str() const {
    if (unbounded())
        return lo == 0 ? "*" : std::to_string(lo) + "..*";
    if (lo == hi)
        return std::to_string(lo);
    return std::to_string(lo) + ".." + std::to_string(hi);
}

namespace {

class Parser {
public:
    Parser(std::string_view text, std::string origin) : lex_(text, std::move(origin)) {}

    GrammarAst parseFile() {
        GrammarAst g;
        g.origin = lex_.origin();
        g.pos = peek().pos;
        if (peek().isName("package")) {
            get();
            g.packageName = dottedName();
            expectPunct(";");
        }
        expectKeyword("grammar");
        g.grammarName = expectName();
        expectPunct("{");
        while (!peek().isPunct("}")) {
            const GToken& t = peek();
            if (t.isName("ident"))
                g.idents.push_back(identDef());
            else if (t.isName("interface"))
                g.interfaces.push_back(interfaceDecl());
            else if (t.isName("ast"))
                g.astBlocks.push_back(astBlock());
            else if (t.isName("association"))
                associationBlock(g);
            else if (t.isName("concept"))
                conceptBlock(g);
            else if (t.is(GTok::Name))
                g.productions.push_back(production());
            else
                fail(t.pos, "expected a declaration, found " + t.describe());
        }
        expectPunct("}");
        if (!peek().is(GTok::End))
            fail(peek().pos, "expected end of file, found " + peek().describe());
        classifyRefs(g);
        checkDuplicates(g);
        return g;
    }

private:
    GrammarLexer lex_;
    std::deque<GToken> buf_;

    [[noreturn]] void fail(Pos pos, const std::string& message) {
        throw SyntaxError({Severity::Error, message, lex_.origin(), pos});
    }

    const GToken& peek(size_t k = 0) {
        while (buf_.size() <= k)
            buf_.push_back(lex_.next());
        return buf_[k];
    }

    GToken get() {
        peek();
        GToken t = buf_.front();
        buf_.pop_front();
        return t;
    }

    GToken expectPunct(std::string_view p) {
        if (!peek().isPunct(p))
            fail(peek().pos, "expected '" + std::string(p) + "', found " + peek().describe());
        return get();
    }

    void expectKeyword(std::string_view name) {
        if (!peek().isName(name))
            fail(peek().pos, "expected '" + std::string(name) + "', found " + peek().describe());
        get();
    }

    std::string expectName() {
        if (!peek().is(GTok::Name))
            fail(peek().pos, "expected a name, found " + peek().describe());
        return get().text;
    }

    std::string dottedName() {
        std::string out = expectName();
        while (peek().isPunct(".")) {
            get();
            out += '.';
            out += expectName();
        }
        return out;
    }

    // raw capture may only run when no tokens were read ahead
    void requireNoLookahead() {
        if (!buf_.empty())
            fail(buf_.front().pos, "internal: lookahead before raw capture");
    }

    // ident NAME pattern (: transform)? ;
    IdentDef identDef() {
        IdentDef def;
        def.pos = peek().pos;
        get();  // ident
        def.name = expectName();
        def.pattern = patternAlternative();
        if (peek().isPunct(":")) {
            get();
            std::string first = expectName();
            if (peek().isPunct("->")) {
                get();
                def.opaque = true;
                def.opaqueParam = first;
                def.resultType = expectName();
                expectPunct("{");
                requireNoLookahead();
                def.opaqueBody = lex_.rawBalancedBraces();
            } else {
                def.transform = first;
            }
        }
        expectPunct(";");
        return def;
    }

    PatternNode patternAlternative() {
        PatternNode first = patternSequence();
        if (!peek().isPunct("|"))
            return first;
        PatternNode alt;
        alt.kind = PatternNode::Kind::Alternative;
        alt.pos = first.pos;
        alt.children.push_back(std::move(first));
        while (peek().isPunct("|")) {
            get();
            alt.children.push_back(patternSequence());
        }
        return alt;
    }

    PatternNode patternSequence() {
        PatternNode seq;
        seq.kind = PatternNode::Kind::Sequence;
        seq.pos = peek().pos;
        while (peek().is(GTok::Char) || peek().isPunct("(")) {
            PatternNode atom = patternAtom();
            if (peek().isPunct("*") || peek().isPunct("+") || peek().isPunct("?")) {
                GToken suffix = get();
                PatternNode rep;
                rep.kind = PatternNode::Kind::Repeat;
                rep.pos = atom.pos;
                rep.rep = suffix.text == "*"   ? PatternNode::Rep::Star
                          : suffix.text == "+" ? PatternNode::Rep::Plus
                                               : PatternNode::Rep::Optional;
                rep.children.push_back(std::move(atom));
                atom = std::move(rep);
            }
            seq.children.push_back(std::move(atom));
        }
        if (seq.children.empty())
            fail(peek().pos, "expected a pattern, found " + peek().describe());
        if (seq.children.size() == 1)
            return std::move(seq.children.front());
        return seq;
    }

    PatternNode patternAtom() {
        if (peek().isPunct("(")) {
            get();
            PatternNode inner = patternAlternative();
            expectPunct(")");
            return inner;
        }
        GToken lit = get();  // GTok::Char, guaranteed by caller
        if (peek().isPunct("..")) {
            get();
            if (!peek().is(GTok::Char))
                fail(peek().pos, "expected a character literal after '..'");
            GToken hi = get();
            if (lit.text.size() != 1 || hi.text.size() != 1)
                fail(lit.pos, "character range bounds must be single characters");
            PatternNode range;
            range.kind = PatternNode::Kind::CharRange;
            range.pos = lit.pos;
            range.lo = lit.text[0];
            range.hi = hi.text[0];
            if (range.lo > range.hi)
                fail(lit.pos, "empty character range");
            return range;
        }
        PatternNode node;
        node.kind = PatternNode::Kind::Literal;
        node.pos = lit.pos;
        node.text = lit.text;
        return node;
    }

    InterfaceDecl interfaceDecl() {
        InterfaceDecl decl;
        decl.pos = peek().pos;
        get();  // interface
        decl.name = expectName();
        expectPunct(";");
        return decl;
    }

    // ast NAME = (attribute | method)* ;
    AstBlock astBlock() {
        AstBlock block;
        block.pos = peek().pos;
        get();  // ast
        block.target = expectName();
        expectPunct("=");
        while (!peek().isPunct(";")) {
            if (peek().isName("method")) {
                AstMethod m;
                m.pos = peek().pos;
                get();
                requireNoLookahead();
                m.signature = lex_.rawUntilBrace();
                expectPunct("{");
                requireNoLookahead();
                m.body = lex_.rawBalancedBraces();
                block.methods.push_back(std::move(m));
            } else {
                AstAttribute a;
                a.pos = peek().pos;
                a.name = expectName();
                expectPunct(":");
                a.type = expectName();
                block.attributes.push_back(std::move(a));
            }
        }
        expectPunct(";");
        return block;
    }

    Multiplicity multiplicity() {
        if (peek().isPunct("*")) {
            get();
            return Multiplicity::many();
        }
        if (!peek().is(GTok::Int))
            fail(peek().pos, "expected a multiplicity, found " + peek().describe());
        GToken lo = get();
        int loVal = std::stoi(lo.text);
        if (peek().isPunct("..")) {
            get();
            if (peek().isPunct("*")) {
                get();
                return {loVal, -1};
            }
            if (!peek().is(GTok::Int))
                fail(peek().pos, "expected an upper bound, found " + peek().describe());
            return {loVal, std::stoi(get().text)};
        }
        return {loVal, loVal};
    }

    bool startsMultiplicity() {
        return peek().is(GTok::Int) || peek().isPunct("*");
    }

    // Src.role M <-> M Tgt(.role)? M? ;
    void associationBlock(GrammarAst& g) {
        get();  // association
        expectPunct("{");
        while (!peek().isPunct("}")) {
            AssociationDecl decl;
            decl.pos = peek().pos;
            decl.sourceClass = expectName();
            expectPunct(".");
            decl.sourceRole = expectName();
            decl.sourceMult = multiplicity();
            expectPunct("<->");
            decl.targetMult = multiplicity();
            decl.targetClass = expectName();
            if (peek().isPunct(".")) {
                get();
                decl.targetRole = expectName();
            }
            if (startsMultiplicity()) {
                // trailing multiplicity restates the opposite end
                Multiplicity trailing = multiplicity();
                if (!(trailing == decl.sourceMult))
                    fail(decl.pos, "conflicting multiplicities for association role '" +
                                       decl.sourceRole + "'");
            }
            if (peek().isPunct(";"))
                get();
            g.associations.push_back(std::move(decl));
        }
        expectPunct("}");
    }

    // role: Src.attr -> Tgt.attr ;
    void conceptBlock(GrammarAst& g) {
        Pos pos = peek().pos;
        get();  // concept
        std::string kind = expectName();
        if (kind != "simplereference")
            fail(pos, "unsupported concept '" + kind + "'");
        expectPunct("{");
        while (!peek().isPunct("}")) {
            ReferenceSpec spec;
            spec.pos = peek().pos;
            spec.role = expectName();
            expectPunct(":");
            spec.sourceClass = expectName();
            expectPunct(".");
            spec.sourceAttr = expectName();
            expectPunct("->");
            spec.targetClass = expectName();
            expectPunct(".");
            spec.targetAttr = expectName();
            expectPunct(";");
            g.concepts.push_back(std::move(spec));
        }
        expectPunct("}");
    }

    Production production() {
        Production p;
        p.pos = peek().pos;
        p.name = expectName();
        if (peek().isName("extends")) {
            get();
            p.superRule = expectName();
        }
        if (peek().isName("implements")) {
            get();
            p.interfaces.push_back(expectName());
            while (peek().isPunct(",")) {
                get();
                p.interfaces.push_back(expectName());
            }
        }
        expectPunct("=");
        p.rhs = rhsAlternative();
        expectPunct(";");
        return p;
    }

    RhsNode rhsAlternative() {
        RhsNode first = rhsSequence();
        if (!peek().isPunct("|"))
            return first;
        RhsNode alt;
        alt.kind = RhsNode::Kind::Alternative;
        alt.pos = first.pos;
        alt.children.push_back(std::move(first));
        while (peek().isPunct("|")) {
            get();
            alt.children.push_back(rhsSequence());
        }
        return alt;
    }

    bool startsRhsAtom() {
        const GToken& t = peek();
        return t.is(GTok::Name) || t.is(GTok::String) || t.isPunct("(") || t.isPunct("[") ||
               t.isPunct("!");
    }

    RhsNode rhsSequence() {
        RhsNode seq;
        seq.kind = RhsNode::Kind::Sequence;
        seq.pos = peek().pos;
        while (startsRhsAtom()) {
            RhsNode atom = rhsAtom();
            if (peek().isPunct("*") || peek().isPunct("+") || peek().isPunct("?")) {
                GToken suffix = get();
                RhsNode rep;
                rep.kind = RhsNode::Kind::Repetition;
                rep.pos = atom.pos;
                rep.rep = suffix.text == "*"   ? RhsNode::Rep::Star
                          : suffix.text == "+" ? RhsNode::Rep::Plus
                                               : RhsNode::Rep::Optional;
                rep.children.push_back(std::move(atom));
                atom = std::move(rep);
            }
            seq.children.push_back(std::move(atom));
        }
        if (seq.children.size() == 1)
            return std::move(seq.children.front());
        return seq;  // empty sequence matches the empty string
    }

    RhsNode rhsAtom() {
        const GToken& t = peek();
        RhsNode node;
        node.pos = t.pos;
        if (t.isPunct("(")) {
            get();
            node = rhsAlternative();
            expectPunct(")");
            return node;
        }
        if (t.isPunct("!")) {
            get();
            if (!peek().is(GTok::String))
                fail(peek().pos, "expected a string literal after '!'");
            GToken lit = get();
            node.kind = RhsNode::Kind::Literal;
            node.text = lit.text;
            node.bang = true;
            return node;
        }
        if (t.is(GTok::String)) {
            GToken lit = get();
            node.kind = RhsNode::Kind::Literal;
            node.text = lit.text;
            return node;
        }
        if (t.isPunct("[")) {
            node = constant();
            return node;
        }
        // NAME, NAME:NAME or NAME:[...]
        std::string first = expectName();
        if (peek().isPunct(":")) {
            get();
            node.label = first;
            if (peek().isPunct("[")) {
                RhsNode c = constant();
                c.label = node.label;
                c.pos = node.pos;
                return c;
            }
            node.kind = RhsNode::Kind::Nonterminal;  // reclassified later
            node.target = expectName();
            return node;
        }
        node.kind = RhsNode::Kind::Nonterminal;
        node.target = first;
        return node;
    }

    RhsNode constant() {
        RhsNode node;
        node.pos = peek().pos;
        node.kind = RhsNode::Kind::Constant;
        expectPunct("[");
        if (!peek().is(GTok::String))
            fail(peek().pos, "expected a string literal in constant");
        node.literals.push_back(get().text);
        while (peek().isPunct("|")) {
            get();
            if (!peek().is(GTok::String))
                fail(peek().pos, "expected a string literal in constant");
            node.literals.push_back(get().text);
        }
        expectPunct("]");
        return node;
    }

    // Name references could not be classified while declarations were still
    // being read; sort them into ident vs nonterminal references now.
    void classifyRefs(GrammarAst& g) {
        std::set<std::string> identNames;
        for (const auto& d : g.idents)
            identNames.insert(d.name);
        std::set<std::string> ruleNames;
        for (const auto& p : g.productions)
            ruleNames.insert(p.name);
        for (const auto& i : g.interfaces)
            ruleNames.insert(i.name);

        auto walk = [&](auto&& self, RhsNode& n) -> void {
            if (n.kind == RhsNode::Kind::Nonterminal) {
                if (identNames.count(n.target))
                    n.kind = RhsNode::Kind::Ident;
                else if (!ruleNames.count(n.target) &&
                         (n.target == "IDENT" || n.target == "STRING"))
                    n.kind = RhsNode::Kind::Ident;  // predefined tokens
            }
            for (auto& c : n.children)
                self(self, c);
        };
        for (auto& p : g.productions)
            walk(walk, p.rhs);
    }

    void checkDuplicates(const GrammarAst& g) {
        std::unordered_map<std::string, Pos> seen;
        auto check = [&](const std::string& name, Pos pos) {
            auto [it, inserted] = seen.emplace(name, pos);
            if (!inserted)
                fail(pos, "duplicate declaration of '" + name + "' (first declared at line " +
                              std::to_string(it->second.line) + ")");
        };
        for (const auto& p : g.productions)
            check(p.name, p.pos);
        for (const auto& i : g.interfaces)
            check(i.name, i.pos);
        for (const auto& d : g.idents)
            check(d.name, d.pos);
    }
};

}  // namespace

GrammarAst parseGrammar(std::string_view text, std::string origin) {
    Parser parser(text, std::move(origin));
    return parser.parseFile();
}

}  // namespace gramlink
