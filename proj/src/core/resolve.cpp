#include "resolve.hpp"

#include <algorithm>

namespace gramlink {

BuildTableResult buildSymbolTable(const ModelTree& tree, const Schema& schema,
                                  const std::string& origin) {
    BuildTableResult out;
    SymbolTable& table = out.table;

    for (const auto& spec : schema.references) {
        int scopeIndex = -1;
        for (size_t i = 0; i < table.scopes.size(); ++i)
            if (table.scopes[i].targetClass == spec.targetClass &&
                table.scopes[i].targetAttr == spec.targetAttr)
                scopeIndex = static_cast<int>(i);
        if (scopeIndex >= 0) {
            table.roleToScope[spec.role] = scopeIndex;
            continue;
        }

        SymbolTable::Scope scope;
        scope.targetClass = spec.targetClass;
        scope.targetAttr = spec.targetAttr;
        for (const ModelNode* node : tree.preorder) {
            if (!schema.isSubtypeOf(node->classRef, spec.targetClass))
                continue;
            auto it = node->attributes.find(spec.targetAttr);
            if (it == node->attributes.end())
                continue;
            for (const auto& v : it->second) {
                const auto* name = std::get_if<std::string>(&v.value);
                if (!name)
                    continue;
                if (scope.ambiguous.count(*name)) {
                    out.diagnostics.push_back({Severity::Error,
                                               "duplicate definition '" + *name + "'", origin,
                                               v.pos});
                    continue;
                }
                auto [entry, inserted] = scope.byName.emplace(*name, node);
                if (!inserted) {
                    const AttrValue* first = entry->second->attribute(spec.targetAttr);
                    std::string where =
                        first ? " (also defined at " + std::to_string(first->pos.line) + ":" +
                                    std::to_string(first->pos.column) + ")"
                              : "";
                    out.diagnostics.push_back({Severity::Error,
                                               "duplicate definition '" + *name + "'" + where,
                                               origin, v.pos});
                    scope.ambiguous.insert(*name);
                    scope.byName.erase(entry);
                }
            }
        }
        table.roleToScope[spec.role] = static_cast<int>(table.scopes.size());
        table.scopes.push_back(std::move(scope));
    }
    return out;
}

const std::vector<const ModelNode*>& LinkTable::linksOf(const ModelNode* node,
                                                        const std::string& role) const {
    static const std::vector<const ModelNode*> kEmpty;
    auto it = links.find({node, role});
    return it == links.end() ? kEmpty : it->second;
}

ResolveResult resolveLinks(const ModelTree& tree, const Schema& schema,
                           const SymbolTable& table, const std::string& origin) {
    ResolveResult out;
    LinkTable& links = out.links;

    for (const auto& assoc : schema.associations) {
        const RefSpecDef* spec = nullptr;
        for (const auto& r : schema.references)
            if (r.role == assoc.forward.role)
                spec = &r;
        if (!spec)
            continue;  // no resolution strategy for this association
        const SymbolTable::Scope* scope = table.scopeFor(spec->role);
        if (!scope)
            continue;

        links.resolvedAssociations.insert(assoc.id());
        links.roles.insert(assoc.forward.role);
        links.roles.insert(assoc.opposite.role);

        for (const ModelNode* node : tree.preorder) {
            if (!schema.isSubtypeOf(node->classRef, spec->sourceClass))
                continue;
            auto it = node->attributes.find(spec->sourceAttr);
            if (it == node->attributes.end())
                continue;
            for (const auto& v : it->second) {
                const auto* name = std::get_if<std::string>(&v.value);
                if (!name)
                    continue;
                if (scope->ambiguous.count(*name))
                    continue;  // fail closed, the duplicate was already reported
                auto hit = scope->byName.find(*name);
                if (hit == scope->byName.end()) {
                    out.diagnostics.push_back({Severity::Error,
                                               "unresolved reference '" + *name + "'", origin,
                                               v.pos});
                    continue;
                }
                links.links[{node, assoc.forward.role}].push_back(hit->second);
                links.links[{hit->second, assoc.opposite.role}].push_back(node);
            }
        }
    }

    // deterministic order: link lists sorted by the opposite end's position
    for (auto& [key, list] : links.links)
        std::stable_sort(list.begin(), list.end(),
                         [](const ModelNode* a, const ModelNode* b) {
                             return a->startToken < b->startToken;
                         });
    return out;
}

std::vector<Diagnostic> checkMultiplicities(const LinkTable& links, const Schema& schema,
                                            const ModelTree& tree, const std::string& origin) {
    std::vector<Diagnostic> diags;
    for (const auto& assoc : schema.associations) {
        if (!links.resolvedAssociations.count(assoc.id()))
            continue;
        for (const AssociationEnd* end : {&assoc.forward, &assoc.opposite}) {
            if (end->mult == Multiplicity::many())
                continue;
            for (const ModelNode* node : tree.preorder) {
                if (!schema.isSubtypeOf(node->classRef, end->className))
                    continue;
                int n = static_cast<int>(links.linksOf(node, end->role).size());
                if (!end->mult.contains(n))
                    diags.push_back({Severity::Error,
                                     end->className + " node has " + std::to_string(n) +
                                         " links for role '" + end->role + "', expected " +
                                         end->mult.str(),
                                     origin, node->pos});
            }
        }
    }
    return diags;
}

std::vector<const ModelNode*> directSuccessors(const LinkTable& links, const ModelNode* node,
                                               const std::string& outRole,
                                               const std::string& throughRole) {
    if (!links.knowsRole(outRole))
        throw std::invalid_argument("unknown role '" + outRole + "'");
    if (!links.knowsRole(throughRole))
        throw std::invalid_argument("unknown role '" + throughRole + "'");
    std::vector<const ModelNode*> out;
    for (const ModelNode* via : links.linksOf(node, outRole))
        for (const ModelNode* target : links.linksOf(via, throughRole))
            if (std::find(out.begin(), out.end(), target) == out.end())
                out.push_back(target);
    std::sort(out.begin(), out.end(), [](const ModelNode* a, const ModelNode* b) {
        return a->startToken < b->startToken;
    });
    return out;
}

}  // namespace gramlink
