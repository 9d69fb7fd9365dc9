#include "normalize.hpp"

namespace gramlink {

namespace {

void collectUsedInterfaces(const RhsNode& n, const GrammarAst& g,
                           std::vector<std::pair<std::string, Pos>>& out) {
    if (n.kind == RhsNode::Kind::Nonterminal && g.findInterface(n.target))
        out.push_back({n.target, n.pos});
    for (const auto& c : n.children)
        collectUsedInterfaces(c, g, out);
}

}  // namespace

ExpandResult expandInheritance(const GrammarAst& g) {
    ExpandResult out;
    NormalizedGrammar& ng = out.normalized;
    ng.grammar = &g;

    for (const auto& p : g.productions) {
        NormRule rule;
        rule.name = p.name;
        rule.body = &p.rhs;
        for (const auto& sub : g.productions)
            if (sub.superRule == p.name)
                rule.tryFirst.push_back(sub.name);
        ng.index[rule.name] = static_cast<int>(ng.rules.size());
        ng.rules.push_back(std::move(rule));
    }
    for (const auto& i : g.interfaces) {
        NormRule rule;
        rule.name = i.name;
        rule.isInterface = true;
        for (const auto& p : g.productions)
            for (const auto& impl : p.interfaces)
                if (impl == i.name)
                    rule.tryFirst.push_back(p.name);
        ng.index[rule.name] = static_cast<int>(ng.rules.size());
        ng.rules.push_back(std::move(rule));
    }
    if (!g.productions.empty())
        ng.startRule = g.productions.front().name;

    // an interface nonterminal with nothing to dispatch to can never match
    for (const auto& p : g.productions) {
        std::vector<std::pair<std::string, Pos>> used;
        collectUsedInterfaces(p.rhs, g, used);
        for (const auto& [name, pos] : used) {
            const NormRule* rule = ng.find(name);
            if (rule && rule->tryFirst.empty())
                out.diagnostics.push_back({Severity::Error,
                                           "interface '" + name + "' used in '" + p.name +
                                               "' has no implementors",
                                           g.origin, pos});
        }
    }
    return out;
}

}  // namespace gramlink
