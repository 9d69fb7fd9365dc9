#include "schema_derive.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gramlink {

namespace {

int addOcc(int a, int b) {
    if (a < 0 || b < 0)
        return -1;
    return a + b;
}

int maxOcc(int a, int b) {
    if (a < 0 || b < 0)
        return -1;
    return std::max(a, b);
}

bool compatible(const MemberInfo& a, const MemberInfo& b) {
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
        case MemberInfo::Kind::Attribute: return a.valueType == b.valueType;
        case MemberInfo::Kind::Composition: return a.target == b.target;
        case MemberInfo::Kind::BoolConstant: return true;
        case MemberInfo::Kind::EnumConstant: return a.literals == b.literals;
    }
    return false;
}

class Analyzer {
public:
    Analyzer(const Production& p, const GrammarAst& g) : prod_(p), grammar_(g) {}

    MemberAnalysis run() {
        MemberAnalysis out;
        out.members = walk(prod_.rhs);
        out.diagnostics = std::move(diags_);
        return out;
    }

private:
    const Production& prod_;
    const GrammarAst& grammar_;
    std::vector<Diagnostic> diags_;

    void conflict(const MemberInfo& m) {
        diags_.push_back({Severity::Error,
                          "conflicting types for member '" + m.name + "' in production '" +
                              prod_.name + "'",
                          grammar_.origin, m.pos});
    }

    // ordered by first occurrence
    void merge(std::vector<MemberInfo>& into, const MemberInfo& m,
               bool parallel /* alternative branches vs sequence */) {
        for (auto& e : into) {
            if (e.name != m.name)
                continue;
            if (!compatible(e, m)) {
                conflict(m);
                return;
            }
            if (parallel) {
                e.minOcc = std::min(e.minOcc, m.minOcc);
                e.maxOcc = maxOcc(e.maxOcc, m.maxOcc);
            } else {
                e.minOcc = addOcc(e.minOcc, m.minOcc);
                e.maxOcc = addOcc(e.maxOcc, m.maxOcc);
            }
            return;
        }
        into.push_back(m);
    }

    std::vector<MemberInfo> walk(const RhsNode& n) {
        std::vector<MemberInfo> out;
        switch (n.kind) {
            case RhsNode::Kind::Literal:
                break;
            case RhsNode::Kind::Ident: {
                MemberInfo m;
                m.kind = MemberInfo::Kind::Attribute;
                m.name = memberNameFor(n);
                m.valueType = identValueType(grammar_.findIdent(n.target));
                m.minOcc = m.maxOcc = 1;
                m.pos = n.pos;
                out.push_back(std::move(m));
                break;
            }
            case RhsNode::Kind::Nonterminal: {
                MemberInfo m;
                m.kind = MemberInfo::Kind::Composition;
                m.name = memberNameFor(n);
                m.target = n.target;
                m.minOcc = m.maxOcc = 1;
                m.pos = n.pos;
                out.push_back(std::move(m));
                break;
            }
            case RhsNode::Kind::Constant: {
                MemberInfo m;
                m.kind = n.literals.size() == 1 ? MemberInfo::Kind::BoolConstant
                                                : MemberInfo::Kind::EnumConstant;
                m.name = memberNameFor(n);
                m.literals = n.literals;
                m.minOcc = m.maxOcc = 1;
                m.pos = n.pos;
                out.push_back(std::move(m));
                break;
            }
            case RhsNode::Kind::Sequence:
                for (const auto& c : n.children)
                    for (const auto& m : walk(c))
                        merge(out, m, /*parallel=*/false);
                break;
            case RhsNode::Kind::Alternative: {
                // per branch first, then min over branches (0 when missing)
                std::vector<std::vector<MemberInfo>> branches;
                for (const auto& c : n.children)
                    branches.push_back(walk(c));
                for (size_t b = 0; b < branches.size(); ++b) {
                    for (const auto& m : branches[b]) {
                        bool known = false;
                        for (const auto& e : out)
                            if (e.name == m.name)
                                known = true;
                        if (!known) {
                            MemberInfo e = m;
                            if (b > 0)
                                e.minOcc = 0;  // missing from an earlier branch
                            out.push_back(std::move(e));
                        } else {
                            merge(out, m, /*parallel=*/true);
                        }
                    }
                }
                // members missing from a later branch can also be absent
                for (auto& e : out) {
                    for (const auto& branch : branches) {
                        bool present = false;
                        for (const auto& m : branch)
                            if (m.name == e.name)
                                present = true;
                        if (!present)
                            e.minOcc = 0;
                    }
                }
                break;
            }
            case RhsNode::Kind::Repetition: {
                out = walk(n.children.front());
                for (auto& e : out) {
                    switch (n.rep) {
                        case RhsNode::Rep::Star:
                            e.minOcc = 0;
                            e.maxOcc = e.maxOcc == 0 ? 0 : -1;
                            break;
                        case RhsNode::Rep::Plus:
                            e.maxOcc = e.maxOcc == 0 ? 0 : -1;
                            break;
                        case RhsNode::Rep::Optional:
                            e.minOcc = 0;
                            break;
                    }
                }
                break;
            }
        }
        return out;
    }
};

}  // namespace

Cardinality cardinalityFor(int minOcc, int maxOcc) {
    if (maxOcc < 0 || maxOcc > 1)
        return Cardinality::List;
    if (minOcc == 0)
        return Cardinality::Optional;
    return Cardinality::One;
}

ValueType identValueType(const IdentDef* def) {
    if (!def)
        return ValueType::String;  // predefined IDENT / STRING
    std::string type = def->opaque ? def->resultType : def->transform;
    if (type == "int" || type == "cardinality")
        return ValueType::Int;
    if (type == "float" || type == "double")
        return ValueType::Float;
    return ValueType::String;
}

MemberAnalysis inferMembers(const Production& p, const GrammarAst& g) {
    return Analyzer(p, g).run();
}

namespace {

struct Member {
    bool isAttribute = false;
    AttributeDef attr;
    CompositionDef comp;

    const std::string& name() const { return isAttribute ? attr.name : comp.name; }
    bool sameAs(const Member& o) const {
        if (isAttribute != o.isAttribute)
            return false;
        if (isAttribute)
            return attr.name == o.attr.name && attr.type == o.attr.type &&
                   attr.enumName == o.attr.enumName && attr.cardinality == o.attr.cardinality;
        return comp.name == o.comp.name && comp.target == o.comp.target &&
               comp.cardinality == o.comp.cardinality;
    }
};

}  // namespace

DeriveResult deriveSchema(const GrammarAst& g) {
    DeriveResult out;
    Schema& schema = out.schema;
    schema.grammarName = g.grammarName;
    schema.packageName = g.packageName;

    auto diag = [&](const std::string& message, Pos pos) {
        out.diagnostics.push_back({Severity::Error, message, g.origin, pos});
    };

    for (const auto& i : g.interfaces)
        schema.interfaces.push_back({i.name, {}, {}});

    // own members per class, in rhs occurrence order
    std::map<std::string, std::vector<Member>> ownMembers;
    for (const auto& p : g.productions) {
        ClassDef cls;
        cls.name = p.name;
        cls.superClass = p.superRule;
        cls.interfaces = p.interfaces;
        schema.classes.push_back(cls);

        MemberAnalysis analysis = inferMembers(p, g);
        for (auto& d : analysis.diagnostics)
            out.diagnostics.push_back(std::move(d));
        for (const auto& m : analysis.members) {
            if (m.maxOcc == 0)
                continue;
            Member member;
            switch (m.kind) {
                case MemberInfo::Kind::Attribute:
                    member.isAttribute = true;
                    member.attr = {m.name, m.valueType, "", cardinalityFor(m.minOcc, m.maxOcc)};
                    break;
                case MemberInfo::Kind::Composition:
                    member.comp = {m.name, m.target, cardinalityFor(m.minOcc, m.maxOcc)};
                    break;
                case MemberInfo::Kind::BoolConstant:
                    // presence flag: false when the word was not consumed
                    member.isAttribute = true;
                    member.attr = {m.name, ValueType::Boolean, "", Cardinality::One};
                    break;
                case MemberInfo::Kind::EnumConstant: {
                    std::string enumName = p.name + "_" + m.name;
                    if (!schema.findEnum(enumName))
                        schema.enums.push_back({enumName, m.literals});
                    member.isAttribute = true;
                    member.attr = {m.name, ValueType::Enum, enumName,
                                   cardinalityFor(m.minOcc, m.maxOcc)};
                    break;
                }
            }
            ownMembers[p.name].push_back(std::move(member));
        }
    }

    // abstract-syntax-only additions
    for (const auto& block : g.astBlocks) {
        auto classifyType = [&](const std::string& type, Pos pos,
                                Member& member) -> bool {
            if (g.findProduction(type) || g.findInterface(type)) {
                member.comp = {"", type, Cardinality::One};
                return true;
            }
            if (g.findIdent(type) || type == "IDENT" || type == "STRING") {
                member.isAttribute = true;
                member.attr = {"", identValueType(g.findIdent(type)), "", Cardinality::One};
                return true;
            }
            diag("unknown type '" + type + "' in ast block for '" + block.target + "'", pos);
            return false;
        };
        if (const Production* p = g.findProduction(block.target); p) {
            for (const auto& a : block.attributes) {
                Member member;
                if (!classifyType(a.type, a.pos, member))
                    continue;
                (member.isAttribute ? member.attr.name : member.comp.name) = a.name;
                ownMembers[block.target].push_back(std::move(member));
            }
            for (auto& c : schema.classes)
                if (c.name == block.target)
                    for (const auto& m : block.methods)
                        c.methods.push_back({m.signature, m.body});
        } else if (g.findInterface(block.target)) {
            for (auto& i : schema.interfaces) {
                if (i.name != block.target)
                    continue;
                for (const auto& a : block.attributes) {
                    Member member;
                    if (!classifyType(a.type, a.pos, member))
                        continue;
                    if (!member.isAttribute) {
                        diag("interface attribute '" + a.name + "' must have a token type",
                             a.pos);
                        continue;
                    }
                    member.attr.name = a.name;
                    i.attributes.push_back(member.attr);
                }
                for (const auto& m : block.methods)
                    i.methods.push_back({m.signature, m.body});
            }
        } else {
            diag("ast block targets unknown declaration '" + block.target + "'", block.pos);
        }
    }

    // merge inherited members: identical redeclarations collapse into the
    // inherited member, diverging ones are errors
    std::map<std::string, std::vector<Member>> effective;
    auto resolveEffective = [&](auto&& self, const std::string& name,
                                std::set<std::string>& visiting) -> std::vector<Member>& {
        auto it = effective.find(name);
        if (it != effective.end())
            return it->second;
        std::vector<Member> eff;
        const Production* p = g.findProduction(name);
        if (p && !p->superRule.empty() && !visiting.count(name) &&
            g.findProduction(p->superRule)) {
            visiting.insert(name);
            eff = self(self, p->superRule, visiting);
            visiting.erase(name);
        }
        std::vector<Member> own;
        for (const auto& m : ownMembers[name]) {
            const Member* inherited = nullptr;
            for (const auto& e : eff)
                if (e.name() == m.name())
                    inherited = &e;
            if (!inherited) {
                eff.push_back(m);
                own.push_back(m);
            } else if (!inherited->sameAs(m)) {
                diag("member '" + m.name() + "' of '" + name +
                         "' conflicts with the inherited member",
                     p ? p->pos : Pos{});
            }
            // identical redeclaration: inherited member, nothing added
        }
        ownMembers[name] = std::move(own);
        return effective.emplace(name, std::move(eff)).first->second;
    };
    for (const auto& p : g.productions) {
        std::set<std::string> visiting;
        resolveEffective(resolveEffective, p.name, visiting);
    }
    for (auto& cls : schema.classes) {
        for (const auto& m : ownMembers[cls.name]) {
            if (m.isAttribute)
                cls.attributes.push_back(m.attr);
            else
                cls.compositions.push_back(m.comp);
        }
    }

    // associations; a missing opposite role name defaults to the class name
    // at the other end
    auto memberNames = [&](const std::string& typeName) {
        std::set<std::string> names;
        for (const auto& m : effective[typeName])
            names.insert(m.name());
        if (const InterfaceDef* i = schema.findInterface(typeName); i)
            for (const auto& a : i->attributes)
                names.insert(a.name);
        return names;
    };
    std::map<std::string, std::set<std::string>> rolesPerType;
    for (const auto& a : g.associations) {
        AssociationDef def;
        def.forward = {a.sourceClass, a.sourceRole, a.targetMult};
        def.opposite = {a.targetClass, a.targetRole.empty() ? a.sourceClass : a.targetRole,
                        a.sourceMult};
        for (const AssociationEnd* end : {&def.forward, &def.opposite}) {
            if (memberNames(end->className).count(end->role))
                diag("association role '" + end->role + "' collides with a member of '" +
                         end->className + "'",
                     a.pos);
            if (!rolesPerType[end->className].insert(end->role).second)
                diag("duplicate association role '" + end->role + "' on '" + end->className +
                         "'",
                     a.pos);
        }
        schema.associations.push_back(std::move(def));
    }

    for (const auto& c : g.concepts)
        schema.references.push_back(
            {c.role, c.sourceClass, c.sourceAttr, c.targetClass, c.targetAttr});

    return out;
}

}  // namespace gramlink
