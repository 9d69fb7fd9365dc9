#include "grammar_validate.hpp"

#include <cctype>
#include <map>
#include <set>

#include "schema_derive.hpp"

namespace gramlink {

namespace {

bool isUppercaseIdent(const std::string& name) {
    if (name.empty() || !std::isupper(static_cast<unsigned char>(name[0])))
        return false;
    for (char c : name)
        if (!std::isupper(static_cast<unsigned char>(c)) &&
            !std::isdigit(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

bool patternCanMatchEmpty(const PatternNode& p) {
    switch (p.kind) {
        case PatternNode::Kind::Literal: return p.text.empty();
        case PatternNode::Kind::CharRange: return false;
        case PatternNode::Kind::Sequence:
            for (const auto& c : p.children)
                if (!patternCanMatchEmpty(c))
                    return false;
            return true;
        case PatternNode::Kind::Alternative:
            for (const auto& c : p.children)
                if (patternCanMatchEmpty(c))
                    return true;
            return false;
        case PatternNode::Kind::Repeat:
            if (p.rep == PatternNode::Rep::Plus)
                return patternCanMatchEmpty(p.children.front());
            return true;
    }
    return false;
}

bool patternCanConsume(const PatternNode& p) {
    switch (p.kind) {
        case PatternNode::Kind::Literal: return !p.text.empty();
        case PatternNode::Kind::CharRange: return true;
        case PatternNode::Kind::Sequence:
        case PatternNode::Kind::Alternative:
            for (const auto& c : p.children)
                if (patternCanConsume(c))
                    return true;
            return false;
        case PatternNode::Kind::Repeat: return patternCanConsume(p.children.front());
    }
    return false;
}

class Validator {
public:
    explicit Validator(const GrammarAst& g) : g_(g) {}

    std::vector<Diagnostic> run() {
        collectNames();
        checkIdents();
        checkProductions();
        checkMembers();
        checkLeftRecursion();
        checkAssociations();
        checkConcepts();
        return std::move(diags_);
    }

private:
    const GrammarAst& g_;
    std::vector<Diagnostic> diags_;
    std::set<std::string> ruleNames_;       // productions
    std::set<std::string> interfaceNames_;  // interfaces
    std::set<std::string> identNames_;

    void error(const std::string& message, Pos pos) {
        diags_.push_back({Severity::Error, message, g_.origin, pos});
    }

    void collectNames() {
        for (const auto& p : g_.productions)
            ruleNames_.insert(p.name);
        for (const auto& i : g_.interfaces)
            interfaceNames_.insert(i.name);
        for (const auto& d : g_.idents)
            identNames_.insert(d.name);
    }

    bool isType(const std::string& name) const {
        return ruleNames_.count(name) || interfaceNames_.count(name);
    }

    void checkIdents() {
        static const std::set<std::string> builtins = {"string", "int", "float", "cardinality"};
        for (const auto& d : g_.idents) {
            if (!isUppercaseIdent(d.name))
                error("ident name '" + d.name + "' must be uppercase", d.pos);
            if (!d.opaque && !d.transform.empty() && !builtins.count(d.transform))
                error("unknown transform '" + d.transform + "' for ident '" + d.name + "'",
                      d.pos);
            if (!patternCanConsume(d.pattern))
                error("pattern of ident '" + d.name + "' cannot match a nonempty string",
                      d.pos);
            else if (patternCanMatchEmpty(d.pattern))
                error("pattern of ident '" + d.name + "' may match the empty string", d.pos);
        }
    }

    void walkRhs(const RhsNode& n, const Production& p) {
        if (!n.label.empty() && !std::islower(static_cast<unsigned char>(n.label[0])))
            error("member label '" + n.label + "' must start lowercase", n.pos);
        if (n.kind == RhsNode::Kind::Nonterminal && !isType(n.target))
            error("undefined nonterminal '" + n.target + "'", n.pos);
        if (n.kind == RhsNode::Kind::Nonterminal && interfaceNames_.count(n.target)) {
            bool implemented = false;
            for (const auto& other : g_.productions)
                for (const auto& i : other.interfaces)
                    if (i == n.target)
                        implemented = true;
            if (!implemented)
                error("interface '" + n.target + "' used in '" + p.name +
                          "' has no implementors",
                      n.pos);
        }
        for (const auto& c : n.children)
            walkRhs(c, p);
    }

    void checkProductions() {
        for (const auto& p : g_.productions) {
            if (!p.superRule.empty()) {
                if (p.superRule == p.name)
                    error("production '" + p.name + "' extends itself", p.pos);
                else if (!ruleNames_.count(p.superRule))
                    error("extends target '" + p.superRule + "' is not a production", p.pos);
            }
            for (const auto& i : p.interfaces)
                if (!interfaceNames_.count(i))
                    error("implements target '" + i + "' is not an interface", p.pos);
            walkRhs(p.rhs, p);
        }
        // cycles in the extends relation
        for (const auto& p : g_.productions) {
            std::set<std::string> seen{p.name};
            const Production* cur = &p;
            while (!cur->superRule.empty()) {
                const Production* super = g_.findProduction(cur->superRule);
                if (!super)
                    break;
                if (!seen.insert(super->name).second) {
                    error("cyclic extends relation involving '" + p.name + "'", p.pos);
                    break;
                }
                cur = super;
            }
        }
        for (const auto& b : g_.astBlocks)
            if (!isType(b.target))
                error("ast block targets unknown declaration '" + b.target + "'", b.pos);
    }

    void checkMembers() {
        for (const auto& p : g_.productions) {
            MemberAnalysis analysis = inferMembers(p, g_);
            for (auto& d : analysis.diagnostics)
                diags_.push_back(std::move(d));
        }
    }

    // --- left recursion -----------------------------------------------------

    std::map<std::string, std::vector<std::string>> subsOf() const {
        std::map<std::string, std::vector<std::string>> subs;
        for (const auto& p : g_.productions)
            if (!p.superRule.empty() && ruleNames_.count(p.superRule))
                subs[p.superRule].push_back(p.name);
        return subs;
    }

    std::map<std::string, std::vector<std::string>> implementorsOf() const {
        std::map<std::string, std::vector<std::string>> impls;
        for (const auto& p : g_.productions)
            for (const auto& i : p.interfaces)
                impls[i].push_back(p.name);
        return impls;
    }

    bool nodeNullable(const RhsNode& n, const std::map<std::string, bool>& nullable) const {
        switch (n.kind) {
            case RhsNode::Kind::Literal:
            case RhsNode::Kind::Ident:
            case RhsNode::Kind::Constant:
                return false;
            case RhsNode::Kind::Sequence:
                for (const auto& c : n.children)
                    if (!nodeNullable(c, nullable))
                        return false;
                return true;
            case RhsNode::Kind::Alternative:
                for (const auto& c : n.children)
                    if (nodeNullable(c, nullable))
                        return true;
                return false;
            case RhsNode::Kind::Repetition:
                if (n.rep == RhsNode::Rep::Plus)
                    return nodeNullable(n.children.front(), nullable);
                return true;
            case RhsNode::Kind::Nonterminal: {
                auto it = nullable.find(n.target);
                return it != nullable.end() && it->second;
            }
        }
        return false;
    }

    void checkLeftRecursion() {
        auto subs = subsOf();
        auto impls = implementorsOf();

        // which nonterminals can match without consuming a token; parsing a
        // nonterminal may also dispatch to a sub-rule or implementor
        std::map<std::string, bool> nullable;
        for (const auto& p : g_.productions)
            nullable[p.name] = false;
        for (const auto& i : g_.interfaces)
            nullable[i.name] = false;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& p : g_.productions) {
                bool value = nodeNullable(p.rhs, nullable);
                for (const auto& sub : subs[p.name])
                    value = value || nullable[sub];
                if (value && !nullable[p.name]) {
                    nullable[p.name] = true;
                    changed = true;
                }
            }
            for (const auto& i : g_.interfaces) {
                bool value = false;
                for (const auto& impl : impls[i.name])
                    value = value || nullable[impl];
                if (value && !nullable[i.name]) {
                    nullable[i.name] = true;
                    changed = true;
                }
            }
        }

        // nonterminals reachable before any token is consumed
        auto leftOfNode = [&](auto&& self, const RhsNode& n,
                              std::set<std::string>& out) -> void {
            switch (n.kind) {
                case RhsNode::Kind::Literal:
                case RhsNode::Kind::Ident:
                case RhsNode::Kind::Constant:
                    return;
                case RhsNode::Kind::Nonterminal:
                    out.insert(n.target);
                    return;
                case RhsNode::Kind::Sequence:
                    for (const auto& c : n.children) {
                        self(self, c, out);
                        if (!nodeNullable(c, nullable))
                            return;
                    }
                    return;
                case RhsNode::Kind::Alternative:
                    for (const auto& c : n.children)
                        self(self, c, out);
                    return;
                case RhsNode::Kind::Repetition:
                    self(self, n.children.front(), out);
                    return;
            }
        };

        std::map<std::string, std::set<std::string>> leftCalls;
        for (const auto& p : g_.productions) {
            std::set<std::string> out;
            for (const auto& sub : subs[p.name])
                out.insert(sub);
            leftOfNode(leftOfNode, p.rhs, out);
            leftCalls[p.name] = std::move(out);
        }
        for (const auto& i : g_.interfaces) {
            std::set<std::string> out;
            for (const auto& impl : impls[i.name])
                out.insert(impl);
            leftCalls[i.name] = std::move(out);
        }

        // transitive closure; small grammars, quadratic is fine
        auto reachable = [&](const std::string& from) {
            std::set<std::string> seen;
            std::vector<std::string> work(leftCalls[from].begin(), leftCalls[from].end());
            while (!work.empty()) {
                std::string cur = work.back();
                work.pop_back();
                if (!seen.insert(cur).second)
                    continue;
                for (const auto& next : leftCalls[cur])
                    work.push_back(next);
            }
            return seen;
        };
        for (const auto& p : g_.productions)
            if (reachable(p.name).count(p.name))
                error("left recursion on '" + p.name + "'", p.pos);
    }

    // --- associations and concepts ------------------------------------------

    void checkMult(const Multiplicity& m, Pos pos) {
        if (!m.unbounded() && m.lo > m.hi)
            error("invalid multiplicity " + std::to_string(m.lo) + ".." + std::to_string(m.hi),
                  pos);
    }

    void checkAssociations() {
        for (const auto& a : g_.associations) {
            if (!isType(a.sourceClass))
                error("unknown class '" + a.sourceClass + "' in association", a.pos);
            if (!isType(a.targetClass))
                error("unknown class '" + a.targetClass + "' in association", a.pos);
            checkMult(a.sourceMult, a.pos);
            checkMult(a.targetMult, a.pos);
        }
    }

    bool isSubtype(const std::string& name, const std::string& type) const {
        std::string cur = name;
        std::set<std::string> seen;
        while (!cur.empty() && seen.insert(cur).second) {
            if (cur == type)
                return true;
            const Production* p = g_.findProduction(cur);
            if (!p)
                return false;
            for (const auto& i : p->interfaces)
                if (i == type)
                    return true;
            cur = p->superRule;
        }
        return false;
    }

    // attribute name -> value type, including inherited and ast-block members
    std::map<std::string, ValueType> attributeTypes(const std::string& typeName) const {
        std::map<std::string, ValueType> out;
        std::string cur = typeName;
        std::set<std::string> seen;
        while (!cur.empty() && seen.insert(cur).second) {
            const Production* p = g_.findProduction(cur);
            if (!p)
                break;
            for (const auto& m : inferMembers(*p, g_).members) {
                switch (m.kind) {
                    case MemberInfo::Kind::Attribute:
                        out.emplace(m.name, m.valueType);
                        break;
                    case MemberInfo::Kind::BoolConstant:
                        out.emplace(m.name, ValueType::Boolean);
                        break;
                    case MemberInfo::Kind::EnumConstant:
                        out.emplace(m.name, ValueType::Enum);
                        break;
                    case MemberInfo::Kind::Composition:
                        break;
                }
            }
            cur = p->superRule;
        }
        for (const auto& b : g_.astBlocks) {
            if (b.target != typeName)
                continue;
            for (const auto& a : b.attributes) {
                const IdentDef* def = g_.findIdent(a.type);
                if (def || a.type == "IDENT" || a.type == "STRING")
                    out.emplace(a.name, identValueType(def));
            }
        }
        return out;
    }

    void checkConcepts() {
        for (const auto& c : g_.concepts) {
            bool pathsOk = true;
            for (const auto& [cls, attr, side] :
                 {std::tuple{c.sourceClass, c.sourceAttr, "source"},
                  std::tuple{c.targetClass, c.targetAttr, "target"}}) {
                if (!isType(cls)) {
                    error("unknown class '" + cls + "' in concept path", c.pos);
                    pathsOk = false;
                    continue;
                }
                auto attrs = attributeTypes(cls);
                auto it = attrs.find(attr);
                if (it == attrs.end()) {
                    error("unknown attribute '" + attr + "' on '" + cls + "' in concept path",
                          c.pos);
                    pathsOk = false;
                } else if (it->second != ValueType::String) {
                    error("concept " + std::string(side) + " attribute '" + cls + "." + attr +
                              "' must hold a string",
                          c.pos);
                    pathsOk = false;
                }
            }
            if (!pathsOk)
                continue;
            bool matched = false;
            for (const auto& a : g_.associations)
                if (a.sourceRole == c.role && isSubtype(c.sourceClass, a.sourceClass) &&
                    isSubtype(c.targetClass, a.targetClass))
                    matched = true;
            if (!matched)
                error("concept role '" + c.role + "' does not match any association", c.pos);
        }
    }
};

}  // namespace

std::vector<Diagnostic> validateGrammar(const GrammarAst& g) {
    return Validator(g).run();
}

}  // namespace gramlink
