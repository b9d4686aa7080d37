#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ahp/model.hpp"
#include "ahp/priority.hpp"

namespace ahp {

struct ResultRow {
    NodePath path;
    std::string name;
    int depth = 0;
    bool leaf = false;
    double global_weight = 0.0;
    double local_weight = 0.0;
    /// Aligned with AnalysisResult::alternatives; sums to global_weight.
    std::vector<double> per_alternative;
    double lambda_max = 0.0;
    double consistency_ratio = 0.0;
    ConsistencyStatus status = ConsistencyStatus::Ideal;
};

struct AnalysisResult {
    std::vector<std::string> alternatives;
    /// Goal first, then depth-first with siblings in descending global weight.
    std::vector<ResultRow> rows;
    std::vector<double> alternative_totals;
    double overall_consistency = 0.0;

    double total(std::string_view alternative) const {
        auto it = std::find(alternatives.begin(), alternatives.end(), alternative);
        if (it == alternatives.end()) throw Error(ErrorCode::UnknownAlternative, "no alternative '" + std::string(alternative) + "'");
        return alternative_totals[static_cast<std::size_t>(it - alternatives.begin())];
    }

    const ResultRow* find(const NodePath& path) const {
        for (const auto& row : rows) {
            if (row.path == path) return &row;
        }
        return nullptr;
    }

    /// First row whose node name matches; convenient for models with unique criterion names.
    const ResultRow* find_named(std::string_view name) const {
        for (const auto& row : rows) {
            if (row.name == name) return &row;
        }
        return nullptr;
    }
};

namespace detail {

inline std::vector<ResultRow> evaluate_node(const DecisionModel& model, const Node& node, NodePath path, int depth,
                                            double global, double local) {
    const auto alternatives = model.alternative_names();
    const std::string where = join_path(path);

    std::vector<std::string> elements;
    if (node.is_leaf()) {
        elements = alternatives;
    } else {
        for (const auto& child : node.children) elements.push_back(child.name);
    }

    PriorityVector priorities;
    try {
        priorities = principal_eigenvector(build_matrix(elements, node.judgments));
    } catch (const Error& e) {
        throw Error(e.code(), e.what(), where);
    }
    if (!priorities.converged) {
        throw Error(ErrorCode::NoConvergence,
                    "power iteration did not converge after " + std::to_string(priorities.iterations) + " iterations",
                    where);
    }
    auto report = consistency(priorities.lambda_max, static_cast<int>(elements.size()));

    ResultRow self;
    self.path = path;
    self.name = node.name;
    self.depth = depth;
    self.leaf = node.is_leaf();
    self.global_weight = global;
    self.local_weight = local;
    self.lambda_max = priorities.lambda_max;
    self.consistency_ratio = report.consistency_ratio;
    self.status = report.status;
    self.per_alternative.assign(alternatives.size(), 0.0);

    std::vector<ResultRow> rows;
    if (node.is_leaf()) {
        for (std::size_t i = 0; i < alternatives.size(); ++i) self.per_alternative[i] = global * priorities.weights[i];
        rows.push_back(std::move(self));
        return rows;
    }

    std::vector<std::size_t> order(node.children.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return priorities.weights[a] > priorities.weights[b]; });

    std::vector<std::vector<ResultRow>> subtrees;
    for (std::size_t k : order) {
        const Node& child = node.children[k];
        NodePath child_path = path;
        child_path.push_back(child.name);
        double w = priorities.weights[k];
        subtrees.push_back(evaluate_node(model, child, std::move(child_path), depth + 1, global * w, w));
        const auto& head = subtrees.back().front();
        for (std::size_t i = 0; i < alternatives.size(); ++i) self.per_alternative[i] += head.per_alternative[i];
    }
    rows.push_back(std::move(self));
    for (auto& subtree : subtrees) {
        for (auto& row : subtree) rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace detail

/// Distributive synthesis over the whole hierarchy. Throws Error(InvalidModel) for models that do not
/// validate and Error(NoConvergence) carrying the node path if an eigenvector fails to converge.
inline AnalysisResult evaluate(const DecisionModel& model) {
    require_valid(model);
    AnalysisResult result;
    result.alternatives = model.alternative_names();
    result.rows = detail::evaluate_node(model, model.goal, {std::string(kGoalSegment)}, 0, 1.0, 1.0);
    result.alternative_totals = result.rows.front().per_alternative;
    result.overall_consistency = result.rows.front().consistency_ratio;
    return result;
}

/// Alternatives by descending total; ties keep declaration order.
inline std::vector<std::pair<std::string, double>> rank_alternatives(const AnalysisResult& result) {
    std::vector<std::pair<std::string, double>> ranked;
    for (std::size_t i = 0; i < result.alternatives.size(); ++i) {
        ranked.emplace_back(result.alternatives[i], result.alternative_totals[i]);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    return ranked;
}

struct JudgmentChange {
    NodePath path;
    std::string left;
    std::string right;
    Ratio old_value;
    Ratio new_value;
};

struct AnalysisDelta {
    JudgmentChange changed;
    AnalysisResult before;
    AnalysisResult after;
    /// after - before, aligned with the alternatives.
    std::vector<double> total_shift;
};

/// Returns `model` with the (left, right) judgment at `path` set to `value` and the old value in
/// the same orientation. A stored (right, left) judgment is rewritten as 1/value.
inline std::pair<DecisionModel, Ratio> with_judgment(const DecisionModel& model, const NodePath& path,
                                                     const std::string& left, const std::string& right, Ratio value) {
    if (!value.positive()) throw Error(ErrorCode::BadValue, "judgment value must be positive", join_path(path));
    DecisionModel edited = model;
    Node& node = node_at(edited, path);
    for (auto& j : node.judgments) {
        if (j.left == left && j.right == right) {
            Ratio old = j.value;
            j.value = value;
            j.placeholder = false;
            return {std::move(edited), old};
        }
        if (j.left == right && j.right == left) {
            Ratio old = j.value.reciprocal();
            j.value = value.reciprocal();
            j.placeholder = false;
            return {std::move(edited), old};
        }
    }
    throw Error(ErrorCode::UnknownPair, "no judgment for pair (" + left + ", " + right + ") at this node", join_path(path));
}

/// Re-evaluates with a single judgment replaced. The input model is not modified.
inline AnalysisDelta whatif(const DecisionModel& model, const NodePath& path, const std::string& left,
                            const std::string& right, Ratio value) {
    auto [edited, old_value] = with_judgment(model, path, left, right, value);
    AnalysisDelta delta;
    delta.changed = {path, left, right, old_value, value};
    delta.before = evaluate(model);
    delta.after = evaluate(edited);
    delta.total_shift.resize(delta.before.alternative_totals.size());
    for (std::size_t i = 0; i < delta.total_shift.size(); ++i) {
        delta.total_shift[i] = delta.after.alternative_totals[i] - delta.before.alternative_totals[i];
    }
    return delta;
}

} // namespace ahp
