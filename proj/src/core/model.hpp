#pragma once

#include <map>
#include <memory>

#include "schema.hpp"
#include "token_spec.hpp"

namespace gramlink {

struct AttrValue {
    Value value;
    Pos pos;
};

/// Typed AST node. `classRef` is the most-derived class that matched.
struct ModelNode {
    int id = -1;  // index in textual pre-order, assigned after parsing
    std::string classRef;
    Pos pos;
    int startToken = 0;
    std::map<std::string, std::vector<AttrValue>> attributes;
    std::map<std::string, std::vector<std::shared_ptr<ModelNode>>> children;

    /// Composition children of every member, in textual order.
    std::vector<const ModelNode*> orderedChildren() const;

    const AttrValue* attribute(const std::string& name) const;
};

struct ModelTree {
    std::shared_ptr<ModelNode> root;
    std::vector<const ModelNode*> preorder;  // textual order, index == node id

    bool empty() const { return root == nullptr; }
};

enum class VisitOrder { Pre, Post };

/// Deterministic traversal along compositions, children in textual order.
std::vector<const ModelNode*> visit(const ModelTree& tree, VisitOrder order);

/// Fills `preorder` and assigns node ids.
void finalizeTree(ModelTree& tree);

bool structurallyEqual(const ModelNode& a, const ModelNode& b);
bool structurallyEqual(const ModelTree& a, const ModelTree& b);

/// Checks every node against its class definition: the class exists, required
/// members are present, optionals hold at most one value, and value types
/// match the schema.
std::vector<Diagnostic> validateInstance(const ModelTree& tree, const Schema& schema,
                                         const std::string& origin);

/// Boolean attributes whose reserved word was never consumed get an explicit
/// false so that flags are always observable.
void materializeBooleans(ModelTree& tree, const Schema& schema);

}  // namespace gramlink
