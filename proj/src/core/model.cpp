#include "model.hpp"

#include <algorithm>

namespace gramlink {

std::vector<const ModelNode*> ModelNode::orderedChildren() const {
    std::vector<const ModelNode*> out;
    for (const auto& [member, list] : children)
        for (const auto& c : list)
            out.push_back(c.get());
    std::sort(out.begin(), out.end(), [](const ModelNode* a, const ModelNode* b) {
        return a->startToken < b->startToken;
    });
    return out;
}

const AttrValue* ModelNode::attribute(const std::string& name) const {
    auto it = attributes.find(name);
    if (it == attributes.end() || it->second.empty())
        return nullptr;
    return &it->second.front();
}

namespace {

void walk(const ModelNode* node, VisitOrder order, std::vector<const ModelNode*>& out) {
    if (order == VisitOrder::Pre)
        out.push_back(node);
    for (const ModelNode* c : node->orderedChildren())
        walk(c, order, out);
    if (order == VisitOrder::Post)
        out.push_back(node);
}

}  // namespace

std::vector<const ModelNode*> visit(const ModelTree& tree, VisitOrder order) {
    std::vector<const ModelNode*> out;
    if (tree.root)
        walk(tree.root.get(), order, out);
    return out;
}

void finalizeTree(ModelTree& tree) {
    tree.preorder = visit(tree, VisitOrder::Pre);
    for (size_t i = 0; i < tree.preorder.size(); ++i)
        const_cast<ModelNode*>(tree.preorder[i])->id = static_cast<int>(i);
}

bool structurallyEqual(const ModelNode& a, const ModelNode& b) {
    if (a.classRef != b.classRef)
        return false;
    if (a.attributes.size() != b.attributes.size() || a.children.size() != b.children.size())
        return false;
    for (const auto& [member, values] : a.attributes) {
        auto it = b.attributes.find(member);
        if (it == b.attributes.end() || it->second.size() != values.size())
            return false;
        for (size_t i = 0; i < values.size(); ++i)
            if (!(values[i].value == it->second[i].value))
                return false;
    }
    for (const auto& [member, list] : a.children) {
        auto it = b.children.find(member);
        if (it == b.children.end() || it->second.size() != list.size())
            return false;
        for (size_t i = 0; i < list.size(); ++i)
            if (!structurallyEqual(*list[i], *it->second[i]))
                return false;
    }
    return true;
}

bool structurallyEqual(const ModelTree& a, const ModelTree& b) {
    if (a.empty() || b.empty())
        return a.empty() == b.empty();
    return structurallyEqual(*a.root, *b.root);
}

namespace {

bool valueMatches(const Value& v, const AttributeDef& def) {
    switch (def.type) {
        case ValueType::String: return std::holds_alternative<std::string>(v);
        case ValueType::Int: return std::holds_alternative<std::int64_t>(v);
        case ValueType::Float: return std::holds_alternative<double>(v);
        case ValueType::Boolean: return std::holds_alternative<bool>(v);
        case ValueType::Enum: return std::holds_alternative<EnumValue>(v);
    }
    return false;
}

bool countAllowed(Cardinality card, size_t n, bool isBoolean) {
    switch (card) {
        case Cardinality::One: return isBoolean ? n <= 1 : n == 1;
        case Cardinality::Optional: return n <= 1;
        case Cardinality::List: return true;
    }
    return false;
}

}  // namespace

std::vector<Diagnostic> validateInstance(const ModelTree& tree, const Schema& schema,
                                         const std::string& origin) {
    std::vector<Diagnostic> diags;
    auto error = [&](const std::string& message, Pos pos) {
        diags.push_back({Severity::Error, message, origin, pos});
    };

    for (const ModelNode* node : visit(tree, VisitOrder::Pre)) {
        const ClassDef* cls = schema.findClass(node->classRef);
        if (!cls) {
            error("node has unknown class '" + node->classRef + "'", node->pos);
            continue;
        }
        auto attrs = schema.effectiveAttributes(node->classRef);
        auto comps = schema.effectiveCompositions(node->classRef);

        for (const auto& def : attrs) {
            auto it = node->attributes.find(def.name);
            size_t n = it == node->attributes.end() ? 0 : it->second.size();
            // boolean flags default to false when the word was not consumed
            if (!countAllowed(def.cardinality, n, def.type == ValueType::Boolean))
                error("member '" + def.name + "' of " + node->classRef + " has " +
                          std::to_string(n) + " values, cardinality is " +
                          cardinalityName(def.cardinality),
                      node->pos);
            if (it != node->attributes.end())
                for (const auto& v : it->second)
                    if (!valueMatches(v.value, def))
                        error("member '" + def.name + "' of " + node->classRef +
                                  " holds a value of the wrong type",
                              v.pos);
        }
        for (const auto& def : comps) {
            auto it = node->children.find(def.name);
            size_t n = it == node->children.end() ? 0 : it->second.size();
            if (!countAllowed(def.cardinality, n, false))
                error("composition '" + def.name + "' of " + node->classRef + " has " +
                          std::to_string(n) + " children, cardinality is " +
                          cardinalityName(def.cardinality),
                      node->pos);
            if (it != node->children.end())
                for (const auto& child : it->second)
                    if (!schema.isSubtypeOf(child->classRef, def.target))
                        error("composition '" + def.name + "' of " + node->classRef +
                                  " holds a node of incompatible class '" + child->classRef +
                                  "'",
                              child->pos);
        }

        // members that are not part of the schema at all
        for (const auto& [member, values] : node->attributes) {
            bool known = false;
            for (const auto& def : attrs)
                if (def.name == member)
                    known = true;
            if (!known)
                error("unknown member '" + member + "' on " + node->classRef, node->pos);
            (void)values;
        }
        for (const auto& [member, list] : node->children) {
            bool known = false;
            for (const auto& def : comps)
                if (def.name == member)
                    known = true;
            if (!known)
                error("unknown composition '" + member + "' on " + node->classRef, node->pos);
            (void)list;
        }
    }
    return diags;
}

}  // namespace gramlink
