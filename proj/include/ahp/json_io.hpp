#pragma once

// JSON wire forms shared by the CLI (`--format json`) and the HTTP API.

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ahp/catalog.hpp"
#include "ahp/model.hpp"
#include "ahp/model_format.hpp"
#include "ahp/synthesis.hpp"

namespace ahp {

using Json = nlohmann::ordered_json;

inline Json to_json(const ValidationReport& report) {
    auto list = [](const std::vector<Diagnostic>& items) {
        Json out = Json::array();
        for (const auto& d : items) out.push_back({{"path", d.path}, {"code", to_string(d.code)}, {"message", d.message}});
        return out;
    };
    return {{"valid", report.ok()}, {"errors", list(report.errors)}, {"warnings", list(report.warnings)}};
}

inline Json to_json(const std::vector<ParseWarning>& warnings) {
    Json out = Json::array();
    for (const auto& w : warnings) {
        out.push_back({{"code", to_string(w.kind)}, {"line", w.span.line}, {"column", w.span.column}, {"message", w.message}});
    }
    return out;
}

// ---- model ----------------------------------------------------------------------------------

inline Json to_json(const Node& node) {
    Json j;
    j["name"] = node.name;
    if (!node.description.empty()) j["description"] = node.description;
    Json judgments = Json::array();
    for (const auto& p : node.judgments) {
        Json item{{"left", p.left}, {"right", p.right}, {"value", p.value.to_string()}};
        if (p.placeholder) item["placeholder"] = true;
        judgments.push_back(std::move(item));
    }
    j["judgments"] = std::move(judgments);
    if (node.is_leaf()) {
        j["children"] = "alternatives";
    } else {
        Json children = Json::array();
        for (const auto& c : node.children) children.push_back(to_json(c));
        j["children"] = std::move(children);
    }
    return j;
}

inline Json to_json(const DecisionModel& model) {
    Json alternatives = Json::array();
    for (const auto& a : model.alternatives) {
        Json attrs = Json::object();
        for (const auto& [k, v] : a.attributes) attrs[k] = v;
        alternatives.push_back({{"name", a.name}, {"attributes", std::move(attrs)}});
    }
    Json j{{"version", model.version}, {"alternatives", std::move(alternatives)}, {"goal", to_json(model.goal)}};
    if (!model.author.empty()) j["author"] = model.author;
    return j;
}

namespace detail {

inline Node node_from_json(const Json& j, const std::string& where) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidModel, "node must be an object", where);
    Node node;
    node.name = j.value("name", std::string{});
    node.description = j.value("description", std::string{});
    const std::string here = where.empty() ? node.name : where + "/" + node.name;
    if (auto it = j.find("judgments"); it != j.end()) {
        if (!it->is_array()) throw Error(ErrorCode::InvalidModel, "judgments must be an array", here);
        for (const auto& item : *it) {
            PairwiseJudgment p;
            if (item.is_array() && item.size() == 3) {
                p.left = item[0].get<std::string>();
                p.right = item[1].get<std::string>();
            } else if (item.is_object()) {
                p.left = item.value("left", std::string{});
                p.right = item.value("right", std::string{});
                p.placeholder = item.value("placeholder", false);
            } else {
                throw Error(ErrorCode::InvalidModel, "judgment must be {left, right, value} or [left, right, value]", here);
            }
            const Json& v = item.is_array() ? item[2] : item.at("value");
            std::optional<Ratio> value;
            if (v.is_string()) value = Ratio::parse(v.get<std::string>());
            else if (v.is_number_integer()) value = Ratio(v.get<std::int64_t>());
            else if (v.is_number()) value = Ratio::parse(v.dump());
            if (!value) throw Error(ErrorCode::BadValue, "judgment value " + v.dump() + " is not a ratio", here);
            p.value = *value;
            node.judgments.push_back(std::move(p));
        }
    }
    auto it = j.find("children");
    if (it == j.end()) throw Error(ErrorCode::InvalidModel, "node has no children", here);
    if (it->is_string()) {
        if (it->get<std::string>() != "alternatives") {
            throw Error(ErrorCode::InvalidModel, "children must be an array or \"alternatives\"", here);
        }
        node.compares_alternatives = true;
    } else if (it->is_array()) {
        for (const auto& c : *it) node.children.push_back(node_from_json(c, here));
    } else {
        throw Error(ErrorCode::InvalidModel, "children must be an array or \"alternatives\"", here);
    }
    return node;
}

} // namespace detail

/// Structured JSON form of a model (the inverse of to_json(DecisionModel)). Throws Error on shape problems;
/// semantic checks are left to validate_model.
inline DecisionModel model_from_json(const Json& j) {
    try {
        if (!j.is_object()) throw Error(ErrorCode::InvalidModel, "model must be a JSON object");
        DecisionModel model;
        model.version = j.value("version", std::string{});
        model.author = j.value("author", std::string{});
        for (const auto& a : j.at("alternatives")) {
            AlternativeDecl alt;
            alt.name = a.is_string() ? a.get<std::string>() : a.at("name").get<std::string>();
            if (a.is_object() && a.contains("attributes")) {
                for (const auto& [k, v] : a.at("attributes").items()) {
                    alt.attributes.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
                }
            }
            model.alternatives.push_back(std::move(alt));
        }
        model.goal = detail::node_from_json(j.at("goal"), "");
        return model;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidModel, std::string("malformed model JSON: ") + e.what());
    }
}

// ---- analysis -------------------------------------------------------------------------------

inline Json to_json(const AnalysisResult& result) {
    auto per_alt = [&](const std::vector<double>& values) {
        Json out = Json::object();
        for (std::size_t i = 0; i < result.alternatives.size(); ++i) out[result.alternatives[i]] = values[i];
        return out;
    };
    Json ranking = Json::array();
    for (const auto& [name, weight] : rank_alternatives(result)) ranking.push_back({{"alternative", name}, {"weight", weight}});
    Json rows = Json::array();
    for (const auto& row : result.rows) {
        rows.push_back({{"path", join_path(row.path)},
                        {"name", row.name},
                        {"depth", row.depth},
                        {"leaf", row.leaf},
                        {"global_weight", row.global_weight},
                        {"local_weight", row.local_weight},
                        {"per_alternative", per_alt(row.per_alternative)},
                        {"lambda_max", row.lambda_max},
                        {"consistency_ratio", row.consistency_ratio},
                        {"status", to_string(row.status)}});
    }
    return {{"alternatives", result.alternatives},
            {"alternative_totals", per_alt(result.alternative_totals)},
            {"ranking", std::move(ranking)},
            {"overall_consistency", result.overall_consistency},
            {"rows", std::move(rows)}};
}

inline Json to_json(const AnalysisDelta& delta) {
    Json shift = Json::object();
    for (std::size_t i = 0; i < delta.before.alternatives.size(); ++i) shift[delta.before.alternatives[i]] = delta.total_shift[i];
    return {{"changed",
             {{"path", join_path(delta.changed.path)},
              {"pair", {delta.changed.left, delta.changed.right}},
              {"old_value", delta.changed.old_value.to_string()},
              {"new_value", delta.changed.new_value.to_string()}}},
            {"before", to_json(delta.before)},
            {"after", to_json(delta.after)},
            {"total_shift", std::move(shift)}};
}

// ---- catalog & metrics ----------------------------------------------------------------------

inline Json to_json(const AttributeCatalogEntry& e) {
    return {{"usability_dimension", to_string(e.usability_dimension)},
            {"category", to_string(e.category)},
            {"category_label", display_name(e.category)},
            {"attribute", e.attribute},
            {"sources", e.sources}};
}

inline Json to_json(const MetricRecord& r) {
    Json values = Json::object();
    for (const auto& [alternative, value] : r.values) {
        if (auto* rate = std::get_if<double>(&value)) values[alternative] = {{"rate", *rate}};
        else if (auto* range = std::get_if<RateRange>(&value)) values[alternative] = {{"low", range->low}, {"high", range->high}};
        else {
            const auto& s = std::get<ScoredValue>(value);
            values[alternative] = {{"mean", s.mean}, {"stddev", s.stddev}};
        }
    }
    return {{"attribute", r.attribute}, {"metric_name", r.metric_name}, {"kind", to_string(r.kind)}, {"values", std::move(values)}};
}

inline MetricRecord metric_from_json(const Json& j) {
    try {
        MetricRecord r;
        r.attribute = j.at("attribute").get<std::string>();
        r.metric_name = j.value("metric_name", std::string{});
        auto kind = parse_metric_kind(j.at("kind").get<std::string>());
        if (!kind) throw Error(ErrorCode::BadMetric, "unknown metric kind " + j.at("kind").dump());
        r.kind = *kind;
        for (const auto& [alternative, v] : j.at("values").items()) {
            MetricValue value;
            switch (r.kind) {
                case MetricKind::SuccessRate: value = v.at("rate").get<double>(); break;
                case MetricKind::RangeRate: value = RateRange{v.at("low").get<double>(), v.at("high").get<double>()}; break;
                case MetricKind::ScaledScore: value = ScoredValue{v.at("mean").get<double>(), v.at("stddev").get<double>()}; break;
            }
            r.values.emplace_back(alternative, value);
        }
        check_metric(r);
        return r;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::BadMetric, std::string("malformed metric record: ") + e.what());
    }
}

} // namespace ahp
