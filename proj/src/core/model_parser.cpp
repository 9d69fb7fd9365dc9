#include "model_parser.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

namespace gramlink {

namespace {

// attribute writes and child attachments are buffered so that a failed
// alternative leaves no trace on the node under construction
struct Effect {
    enum class Kind { Attribute, Child };

    Kind kind = Kind::Attribute;
    std::string member;
    Value value;
    Pos pos;
    std::shared_ptr<ModelNode> child;
};

struct Outcome {
    int end = 0;
    std::vector<Effect> effects;
};

class ModelParser {
public:
    ModelParser(const NormalizedGrammar& ng, const std::vector<Token>& tokens,
                std::string origin, const ParseOptions& options)
        : ng_(ng), tokens_(tokens), origin_(std::move(origin)), options_(options) {}

    ModelTree run() {
        if (ng_.startRule.empty())
            throw SyntaxError(
                {Severity::Error, "grammar defines no productions", origin_, Pos{1, 1}});
        auto result = parseRule(ng_.startRule, 0);
        int consumed = result ? result->first : 0;
        if (!result || consumed != static_cast<int>(tokens_.size())) {
            if (farthest_ >= consumed && farthest_ >= 0)
                throwExpected();
            Pos pos = posAt(consumed);
            throw SyntaxError({Severity::Error,
                               "unexpected trailing input " + tokenAt(consumed), origin_, pos});
        }
        ModelTree tree;
        tree.root = result->second;
        finalizeTree(tree);
        return tree;
    }

private:
    const NormalizedGrammar& ng_;
    const std::vector<Token>& tokens_;
    std::string origin_;
    ParseOptions options_;

    using RuleResult = std::optional<std::pair<int, std::shared_ptr<ModelNode>>>;
    std::unordered_map<std::uint64_t, RuleResult> memo_;

    int farthest_ = -1;
    std::vector<std::string> expected_;

    Pos posAt(int index) const {
        if (index < static_cast<int>(tokens_.size()))
            return tokens_[index].pos;
        if (!tokens_.empty()) {
            Pos p = tokens_.back().pos;
            p.column += static_cast<int>(tokens_.back().lexeme.size());
            return p;
        }
        return {1, 1};
    }

    std::string tokenAt(int index) const {
        if (index < static_cast<int>(tokens_.size()))
            return tokens_[index].describe();
        return "end of input";
    }

    void recordFailure(int pos, const std::string& what) {
        if (pos < farthest_)
            return;
        if (pos > farthest_) {
            farthest_ = pos;
            expected_.clear();
        }
        if (std::find(expected_.begin(), expected_.end(), what) == expected_.end())
            expected_.push_back(what);
    }

    [[noreturn]] void throwExpected() {
        std::string list;
        for (size_t i = 0; i < expected_.size(); ++i) {
            if (i > 0)
                list += i + 1 == expected_.size() ? " or " : ", ";
            list += expected_[i];
        }
        throw SyntaxError({Severity::Error,
                           "expected " + list + ", found " + tokenAt(farthest_), origin_,
                           posAt(farthest_)});
    }

    RuleResult parseRule(const std::string& name, int pos) {
        const NormRule* rule = ng_.find(name);
        if (!rule)
            return std::nullopt;
        int ruleIndex = ng_.index.at(name);
        std::uint64_t key =
            (static_cast<std::uint64_t>(ruleIndex) << 32) | static_cast<std::uint32_t>(pos);
        if (options_.memoize) {
            auto it = memo_.find(key);
            if (it != memo_.end())
                return it->second;
        }

        RuleResult result;
        for (const auto& sub : rule->tryFirst) {
            result = parseRule(sub, pos);
            if (result)
                break;
        }
        if (!result && rule->body) {
            auto node = std::make_shared<ModelNode>();
            node->classRef = rule->name;
            node->startToken = pos;
            node->pos = posAt(pos);
            if (auto outcome = matchNode(*rule->body, pos)) {
                for (auto& e : outcome->effects) {
                    if (e.kind == Effect::Kind::Attribute)
                        node->attributes[e.member].push_back({std::move(e.value), e.pos});
                    else
                        node->children[e.member].push_back(std::move(e.child));
                }
                result = std::make_pair(outcome->end, std::move(node));
            }
        }
        if (options_.memoize)
            memo_[key] = result;
        return result;
    }

    std::optional<Outcome> matchNode(const RhsNode& n, int pos) {
        switch (n.kind) {
            case RhsNode::Kind::Sequence: {
                Outcome out{pos, {}};
                for (const auto& c : n.children) {
                    auto r = matchNode(c, out.end);
                    if (!r)
                        return std::nullopt;
                    out.end = r->end;
                    for (auto& e : r->effects)
                        out.effects.push_back(std::move(e));
                }
                return out;
            }
            case RhsNode::Kind::Alternative: {
                for (const auto& c : n.children)
                    if (auto r = matchNode(c, pos))
                        return r;
                return std::nullopt;
            }
            case RhsNode::Kind::Repetition: {
                const RhsNode& child = n.children.front();
                Outcome out{pos, {}};
                if (n.rep == RhsNode::Rep::Optional) {
                    if (auto r = matchNode(child, pos))
                        return r;
                    return out;
                }
                if (n.rep == RhsNode::Rep::Plus) {
                    auto first = matchNode(child, pos);
                    if (!first)
                        return std::nullopt;
                    out = std::move(*first);
                }
                while (true) {
                    auto r = matchNode(child, out.end);
                    if (!r || r->end == out.end)  // refuse zero-width iterations
                        break;
                    out.end = r->end;
                    for (auto& e : r->effects)
                        out.effects.push_back(std::move(e));
                }
                return out;
            }
            case RhsNode::Kind::Nonterminal: {
                auto r = parseRule(n.target, pos);
                if (!r) {
                    recordFailure(pos, n.target);
                    return std::nullopt;
                }
                Outcome out{r->first, {}};
                Effect e;
                e.kind = Effect::Kind::Child;
                e.member = memberNameFor(n);
                e.child = r->second;
                out.effects.push_back(std::move(e));
                return out;
            }
            case RhsNode::Kind::Ident: {
                if (pos >= static_cast<int>(tokens_.size()) ||
                    !tokens_[pos].isIdent(n.target)) {
                    recordFailure(pos, n.target);
                    return std::nullopt;
                }
                Outcome out{pos + 1, {}};
                Effect e;
                e.member = memberNameFor(n);
                e.value = tokens_[pos].value;
                e.pos = tokens_[pos].pos;
                out.effects.push_back(std::move(e));
                return out;
            }
            case RhsNode::Kind::Literal: {
                if (pos >= static_cast<int>(tokens_.size()) ||
                    !tokens_[pos].isLiteral(n.text)) {
                    recordFailure(pos, "'" + n.text + "'");
                    return std::nullopt;
                }
                return Outcome{pos + 1, {}};
            }
            case RhsNode::Kind::Constant: {
                const Token* tok =
                    pos < static_cast<int>(tokens_.size()) ? &tokens_[pos] : nullptr;
                for (const auto& lit : n.literals) {
                    if (tok && tok->isLiteral(lit)) {
                        Outcome out{pos + 1, {}};
                        Effect e;
                        e.member = memberNameFor(n);
                        e.pos = tok->pos;
                        if (n.literals.size() == 1)
                            e.value = true;
                        else
                            e.value = EnumValue{lit};
                        out.effects.push_back(std::move(e));
                        return out;
                    }
                }
                for (const auto& lit : n.literals)
                    recordFailure(pos, "'" + lit + "'");
                return std::nullopt;
            }
        }
        return std::nullopt;
    }
};

}  // namespace

ModelTree parseModel(const NormalizedGrammar& ng, const std::vector<Token>& tokens,
                     const std::string& origin, const ParseOptions& options) {
    return ModelParser(ng, tokens, origin, options).run();
}

}  // namespace gramlink
