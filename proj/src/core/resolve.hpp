#pragma once

#include <map>
#include <set>

#include "model.hpp"

namespace gramlink {

/// Definition-site index for name resolution. One scope per distinct
/// (class, attribute) pair; reference specs sharing a definition side share
/// the scope. Names defined more than once are recorded as ambiguous and
/// never resolve.
struct SymbolTable {
    struct Scope {
        std::string targetClass;
        std::string targetAttr;
        std::map<std::string, const ModelNode*> byName;
        std::set<std::string> ambiguous;
    };

    std::vector<Scope> scopes;
    std::map<std::string, int> roleToScope;

    const Scope* scopeFor(const std::string& role) const {
        auto it = roleToScope.find(role);
        return it == roleToScope.end() ? nullptr : &scopes[it->second];
    }
};

struct BuildTableResult {
    SymbolTable table;
    std::vector<Diagnostic> diagnostics;
};

BuildTableResult buildSymbolTable(const ModelTree& tree, const Schema& schema,
                                  const std::string& origin);

/// Non-compositional links established by resolution, queryable per node and
/// role. Opposite links are the exact inverse of forward links.
struct LinkTable {
    std::map<std::pair<const ModelNode*, std::string>, std::vector<const ModelNode*>> links;
    std::set<std::string> roles;               // every navigable role
    std::set<std::string> resolvedAssociations;  // association ids with a matching spec

    const std::vector<const ModelNode*>& linksOf(const ModelNode* node,
                                                 const std::string& role) const;
    bool knowsRole(const std::string& role) const { return roles.count(role) > 0; }
};

struct ResolveResult {
    LinkTable links;
    std::vector<Diagnostic> diagnostics;
};

/// Looks up every referencing attribute value in the symbol table and records
/// forward plus mirrored opposite links. Misses produce diagnostics;
/// ambiguous names resolve to nothing. Associations without a reference spec
/// are left unresolved.
ResolveResult resolveLinks(const ModelTree& tree, const Schema& schema,
                           const SymbolTable& table, const std::string& origin);

/// Verifies the link count of every participating node against the bounds of
/// its association end.
std::vector<Diagnostic> checkMultiplicities(const LinkTable& links, const Schema& schema,
                                            const ModelTree& tree, const std::string& origin);

/// Nodes reachable by following `outRole` and then `throughRole`, in textual
/// order. Throws std::invalid_argument for a role the table does not know.
std::vector<const ModelNode*> directSuccessors(const LinkTable& links, const ModelNode* node,
                                               const std::string& outRole,
                                               const std::string& throughRole);

}  // namespace gramlink
