#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ahp/error.hpp"
#include "ahp/ratio.hpp"

namespace ahp {

/// `value` is how much more important `left` is than `right`. The reciprocal is implied, never stored.
struct PairwiseJudgment {
    std::string left;
    std::string right;
    Ratio value;
    /// Set for scaffolded unit judgments the analyst has not entered yet.
    bool placeholder = false;

    friend bool operator==(const PairwiseJudgment&, const PairwiseJudgment&) = default;
};

/// A criterion. Leaves (`compares_alternatives`) have no child nodes and judge the model's alternatives.
struct Node {
    std::string name;
    std::string description;
    std::vector<PairwiseJudgment> judgments;
    std::vector<Node> children;
    bool compares_alternatives = false;

    bool is_leaf() const { return compares_alternatives; }

    friend bool operator==(const Node&, const Node&) = default;
};

struct AlternativeDecl {
    std::string name;
    /// Carried through parse/serialize, never interpreted.
    std::vector<std::pair<std::string, std::string>> attributes;

    friend bool operator==(const AlternativeDecl&, const AlternativeDecl&) = default;
};

struct ModelMetadata {
    std::string name;
    std::string description;
    std::string author;
};

struct DecisionModel {
    std::string version = "2.0";
    Node goal;
    std::vector<AlternativeDecl> alternatives;
    std::string author;

    ModelMetadata metadata() const { return {goal.name, goal.description, author}; }

    std::vector<std::string> alternative_names() const {
        std::vector<std::string> names;
        names.reserve(alternatives.size());
        for (const auto& a : alternatives) names.push_back(a.name);
        return names;
    }

    friend bool operator==(const DecisionModel&, const DecisionModel&) = default;
};

/// Root segment used in reported node paths.
inline constexpr std::string_view kGoalSegment = "Goal";

using NodePath = std::vector<std::string>;

inline std::string join_path(const NodePath& path) {
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += '/';
        out += path[i];
    }
    return out;
}

inline NodePath split_path(std::string_view text) {
    NodePath path;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto slash = text.find('/', start);
        auto part = text.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start);
        if (!part.empty()) path.emplace_back(part);
        if (slash == std::string_view::npos) break;
        start = slash + 1;
    }
    return path;
}

struct Diagnostic {
    std::string path;
    ErrorCode code;
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct ValidationReport {
    std::vector<Diagnostic> errors;
    std::vector<Diagnostic> warnings;

    bool ok() const { return errors.empty(); }

    bool has_error(ErrorCode code) const {
        return std::any_of(errors.begin(), errors.end(), [&](const Diagnostic& d) { return d.code == code; });
    }
    bool has_warning(ErrorCode code) const {
        return std::any_of(warnings.begin(), warnings.end(), [&](const Diagnostic& d) { return d.code == code; });
    }

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

namespace detail {

inline bool is_saaty_value(const Ratio& v) {
    for (std::int64_t k : {1, 3, 5, 7, 9}) {
        if (v == Ratio(k) || v == Ratio(1, k)) return true;
    }
    return false;
}

inline void validate_judgments(std::span<const std::string> names, const std::vector<PairwiseJudgment>& judgments,
                               const std::string& where, ValidationReport& report) {
    auto known = [&](const std::string& n) { return std::find(names.begin(), names.end(), n) != names.end(); };
    auto index_of = [&](const std::string& n) {
        return static_cast<std::size_t>(std::find(names.begin(), names.end(), n) - names.begin());
    };

    // first value seen per unordered pair, oriented as (min index, max index)
    std::vector<std::vector<std::optional<Ratio>>> seen(names.size(),
                                                        std::vector<std::optional<Ratio>>(names.size()));
    bool placeholders = false;

    for (const auto& j : judgments) {
        std::string pair = "(" + j.left + ", " + j.right + ")";
        if (!known(j.left) || !known(j.right)) {
            report.errors.push_back({where, ErrorCode::UnknownName,
                                     "judgment " + pair + " names " + (!known(j.left) ? j.left : j.right) +
                                         ", which is not compared at this node"});
            continue;
        }
        if (j.left == j.right) {
            report.errors.push_back({where, ErrorCode::SelfPair, "judgment " + pair + " compares an element with itself"});
            continue;
        }
        if (!j.value.positive()) {
            report.errors.push_back({where, ErrorCode::NonPositiveValue,
                                     "judgment " + pair + " has non-positive value " + j.value.to_string()});
            continue;
        }
        if (j.value > Ratio(9) || j.value < Ratio(1, 9)) {
            report.warnings.push_back({where, ErrorCode::ValueOutOfScale,
                                       "judgment " + pair + " value " + j.value.to_string() + " is outside [1/9, 9]"});
        } else if (!is_saaty_value(j.value)) {
            report.warnings.push_back({where, ErrorCode::OffScaleValue,
                                       "judgment " + pair + " value " + j.value.to_string() +
                                           " is not one of 1, 3, 5, 7, 9 or their reciprocals"});
        }
        placeholders = placeholders || j.placeholder;

        auto a = index_of(j.left), b = index_of(j.right);
        Ratio v = a < b ? j.value : j.value.reciprocal();
        if (a > b) std::swap(a, b);
        if (const auto& prev = seen[a][b]) {
            if (*prev == v) {
                report.errors.push_back({where, ErrorCode::DuplicatePair, "pair " + pair + " is judged more than once"});
            } else {
                report.errors.push_back({where, ErrorCode::ConflictingPair,
                                         "pair " + pair + " is judged twice with contradictory values"});
            }
            continue;
        }
        seen[a][b] = v;
    }

    for (std::size_t a = 0; a < names.size(); ++a) {
        for (std::size_t b = a + 1; b < names.size(); ++b) {
            if (names[a] == names[b]) continue;
            if (!seen[a][b]) {
                report.errors.push_back({where, ErrorCode::MissingPair,
                                         "no judgment for pair (" + names[a] + ", " + names[b] + ")"});
            }
        }
    }
    if (placeholders) {
        report.warnings.push_back({where, ErrorCode::PlaceholderJudgment,
                                   "node still has placeholder judgments (value 1) awaiting entry"});
    }
}

inline void validate_node(const DecisionModel& model, const Node& node, const std::string& where,
                          ValidationReport& report) {
    std::vector<std::string> names;
    if (node.is_leaf()) {
        if (!node.children.empty()) {
            report.errors.push_back({where, ErrorCode::InvalidModel, "leaf criterion also declares child criteria"});
        }
        names = model.alternative_names();
    } else {
        if (node.children.empty()) {
            report.errors.push_back({where, ErrorCode::EmptyChildren, "node has no children"});
        }
        std::set<std::string> unique;
        for (const auto& child : node.children) {
            if (child.name.empty()) {
                report.errors.push_back({where, ErrorCode::EmptyName, "child with empty name"});
            } else if (!unique.insert(child.name).second) {
                report.errors.push_back({where, ErrorCode::DuplicateChild, "child " + child.name + " appears twice"});
            }
            names.push_back(child.name);
        }
    }
    validate_judgments(names, node.judgments, where, report);

    if (!node.is_leaf()) {
        for (const auto& child : node.children) validate_node(model, child, where + "/" + child.name, report);
    }
}

} // namespace detail

/// Collects every structural problem in the model. Never throws.
inline ValidationReport validate_model(const DecisionModel& model) {
    ValidationReport report;
    const std::string root{kGoalSegment};

    if (model.version != "2.0") {
        report.errors.push_back({"", ErrorCode::BadVersion, "version must be 2.0, got '" + model.version + "'"});
    }
    if (model.alternatives.size() < 2) {
        report.errors.push_back({"", ErrorCode::TooFewAlternatives, "at least 2 alternatives are required"});
    }
    std::set<std::string> unique;
    for (const auto& a : model.alternatives) {
        if (a.name.empty()) {
            report.errors.push_back({"", ErrorCode::EmptyName, "alternative with empty name"});
        } else if (!unique.insert(a.name).second) {
            report.errors.push_back({"", ErrorCode::DuplicateAlternative, "alternative " + a.name + " declared twice"});
        }
    }
    if (!model.goal.is_leaf() && model.goal.children.empty()) {
        report.errors.push_back({root, ErrorCode::EmptyChildren, "goal has no children"});
    } else {
        detail::validate_node(model, model.goal, root, report);
    }
    return report;
}

namespace detail {

inline bool is_root_segment(const DecisionModel& model, const std::string& segment) {
    return segment == kGoalSegment || segment == model.goal.name;
}

template <typename NodeT>
NodeT& node_at_impl(NodeT& goal, const DecisionModel& model, const NodePath& path) {
    if (path.empty() || !is_root_segment(model, path.front())) {
        throw Error(ErrorCode::UnknownPath, "path must start at the goal", join_path(path));
    }
    NodeT* node = &goal;
    for (std::size_t i = 1; i < path.size(); ++i) {
        auto it = std::find_if(node->children.begin(), node->children.end(),
                               [&](const Node& c) { return c.name == path[i]; });
        if (it == node->children.end()) {
            throw Error(ErrorCode::UnknownPath, "'" + path[i] + "' is not a child of '" + node->name + "'",
                        join_path(path));
        }
        node = &*it;
    }
    return *node;
}

} // namespace detail

/// Resolves a goal-rooted path. The first segment is "Goal" or the goal's name.
inline const Node& node_at(const DecisionModel& model, const NodePath& path) {
    return detail::node_at_impl(model.goal, model, path);
}

inline Node& node_at(DecisionModel& model, const NodePath& path) {
    return detail::node_at_impl(model.goal, model, path);
}

/// Throws InvalidModel carrying the first error if the model does not validate.
inline void require_valid(const DecisionModel& model) {
    auto report = validate_model(model);
    if (!report.ok()) {
        const auto& e = report.errors.front();
        throw Error(ErrorCode::InvalidModel, std::string(to_string(e.code)) + ": " + e.message, e.path);
    }
}

} // namespace ahp
