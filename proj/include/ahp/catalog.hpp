#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ahp/error.hpp"
#include "ahp/model.hpp"

namespace ahp {

enum class UsabilityDimension { Efficiency, Effectiveness, Satisfaction };

enum class Category { Performance, Functionality, Humanity, Affect, EthicsBehavior, Accessibility };

inline constexpr Category kAllCategories[] = {Category::Performance, Category::Functionality, Category::Humanity,
                                              Category::Affect,      Category::EthicsBehavior, Category::Accessibility};

inline std::string_view to_string(UsabilityDimension d) {
    switch (d) {
        case UsabilityDimension::Efficiency: return "EFFICIENCY";
        case UsabilityDimension::Effectiveness: return "EFFECTIVENESS";
        case UsabilityDimension::Satisfaction: return "SATISFACTION";
    }
    return "UNKNOWN";
}

/// Identifier form, usable as a node name.
inline std::string_view to_string(Category c) {
    switch (c) {
        case Category::Performance: return "Performance";
        case Category::Functionality: return "Functionality";
        case Category::Humanity: return "Humanity";
        case Category::Affect: return "Affect";
        case Category::EthicsBehavior: return "EthicsBehavior";
        case Category::Accessibility: return "Accessibility";
    }
    return "Unknown";
}

inline std::string_view display_name(Category c) {
    return c == Category::EthicsBehavior ? "Ethics & Behavior" : to_string(c);
}

inline UsabilityDimension dimension_of(Category c) {
    switch (c) {
        case Category::Performance: return UsabilityDimension::Efficiency;
        case Category::Functionality:
        case Category::Humanity: return UsabilityDimension::Effectiveness;
        default: return UsabilityDimension::Satisfaction;
    }
}

namespace detail {

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline std::string alnum_lower(std::string_view s) {
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c)) out += static_cast<char>(std::tolower(c));
    }
    return out;
}

} // namespace detail

/// Case-insensitive; ignores punctuation and spaces, so "Ethics & Behavior" and "EthicsBehavior" both match.
inline std::optional<Category> parse_category(std::string_view text) {
    auto key = detail::alnum_lower(text);
    for (Category c : kAllCategories) {
        if (detail::alnum_lower(to_string(c)) == key) return c;
    }
    return std::nullopt;
}

inline std::optional<UsabilityDimension> parse_dimension(std::string_view text) {
    auto key = detail::lower(text);
    for (auto d : {UsabilityDimension::Efficiency, UsabilityDimension::Effectiveness, UsabilityDimension::Satisfaction}) {
        if (detail::lower(to_string(d)) == key) return d;
    }
    return std::nullopt;
}

struct AttributeCatalogEntry {
    UsabilityDimension usability_dimension;
    Category category;
    std::string attribute;
    std::vector<std::string> sources;
};

namespace detail {

struct CatalogRow {
    Category category;
    const char* attribute;
    std::vector<const char*> sources;
};

// Quality attributes of chatbots and conversational agents, grouped by ISO 9241 usability dimension.
// Reference strings are kept as printed; the "Passes the Turing test" / "Does not have to pass the
// Turing Test" pair is intentionally contradictory (the list is suggestive, not prescriptive).
inline const std::vector<AttributeCatalogEntry>& catalog_table() {
    static const std::vector<AttributeCatalogEntry> table = [] {
        const std::vector<CatalogRow> rows = {
            {Category::Performance, "Graceful degradation", {"Cohen & Lane (2016)"}},
            {Category::Performance, "Robustness to manipulation", {"Thieltges (2016)"}},
            {Category::Performance, "Robustness to unexpected input", {"Kluwer (2011)"}},
            {Category::Performance, "Avoid inappropriate utterances and be able to perform damage control",
             {"Morrissey and Kirakowski (2013)"}},
            {Category::Performance, "Effective function allocation, provides appropriate escalation channels to humans",
             {"Staven (2017)"}},

            {Category::Functionality, "Accurate speech synthesis", {"Kuligowska (2015)"}},
            {Category::Functionality, "Interprets commands accurately", {"Eeuwen (2017)"}},
            {Category::Functionality, "Use appropriate degrees of formality, linguistic register",
             {"Morrissey & Kirakowski (2013)"}},
            {Category::Functionality, "Linguistic accuracy of outputs", {"Wallace (2003)"}},
            {Category::Functionality, "Execute requested tasks", {"Ramos (2017)"}},
            {Category::Functionality, "Facilitate transactions and follows up with status reports", {"Eeuwen (2017)"}},
            {Category::Functionality, "General ease of use", {"Solomon (2017)"}},
            {Category::Functionality, "Engage in on-the-fly problem solving", {"Cohen & Lane (2016)"}},
            {Category::Functionality, "Contains breadth of knowledge, is flexible in interpreting it", {}},

            {Category::Humanity, "Passes the Turing test", {"Weizenbaum (1966)", "Wallace (2003)"}},
            {Category::Humanity, "Does not have to pass the Turing Test", {"Ramos (2017)"}},
            {Category::Humanity, "Transparent to inspection, discloses its chatbot identity", {"Bostrom & Yudkowski (2014)"}},
            {Category::Humanity, "Include errors to increase realism", {"Coniam (2014)"}},
            {Category::Humanity, "Convincing, satisfying, & natural interaction", {"Morrissey & Kirakowski (2013)"}},
            {Category::Humanity, "Able to respond to specific questions", {}},
            {Category::Humanity, "Able to maintain themed discussion", {}},

            {Category::Affect, "Provide greetings, convey personality", {"Morrissey & Kirakowski (2013)"}},
            {Category::Affect, "Give conversational cues", {"Pauletto et al. (2013)"}},
            {Category::Affect, "Provide emotional information through tone, inflection, and expressivity",
             {"Solomon (2017)"}},
            {Category::Affect, "Exude warmth and authenticity", {"Eeuwen (2017)"}},
            {Category::Affect, "Make tasks more fun and interesting", {"Ramos (2017)"}},
            {Category::Affect, "Entertain and/or enable participant to enjoy the interaction", {"Meira & Canuto (2015)"}},
            {Category::Affect, "Read and respond to moods of human participant", {}},

            {Category::EthicsBehavior, "Respect, inclusion, and preservation of dignity (linked to choice of training set)",
             {"Neff & Nagy (2016)"}},
            {Category::EthicsBehavior, "Ethics and cultural knowledge of users", {"Applin & Fischer (2015)"}},
            {Category::EthicsBehavior, "Protect and respect privacy", {"Eeuwen (2017)"}},
            {Category::EthicsBehavior, "Nondeception", {"Isaac & Bridewell (2014)"}},
            {Category::EthicsBehavior, "Sensitivity to safety and social concerns", {"Miner et al. (2016)"}},
            {Category::EthicsBehavior, "Trustworthiness (linked to perceived quality)", {"Herzum et al. (2002)"}},
            {Category::EthicsBehavior, "Awareness of trends and social context", {"Vetter (2002)"}},

            {Category::Accessibility, "Responds to social cues or lack thereof", {"Morrissey and Kirakowski (2013)"}},
            {Category::Accessibility, "Can detect meaning or intent", {"Wilson et al. (2017)"}},
            {Category::Accessibility, "Meets neurodiverse needs such as extra response time and text interface",
             {"Radziwill & Benton (2017)"}},
        };
        std::vector<AttributeCatalogEntry> out;
        for (const auto& row : rows) {
            out.push_back({dimension_of(row.category), row.category, row.attribute,
                           std::vector<std::string>(row.sources.begin(), row.sources.end())});
        }
        return out;
    }();
    return table;
}

} // namespace detail

struct CatalogFilter {
    std::optional<UsabilityDimension> dimension;
    std::optional<Category> category;
    /// Case-insensitive substring of the attribute text.
    std::optional<std::string> keyword;
};

inline std::vector<AttributeCatalogEntry> catalog_entries(const CatalogFilter& filter = {}) {
    std::vector<AttributeCatalogEntry> out;
    std::string needle = filter.keyword ? detail::lower(*filter.keyword) : std::string{};
    for (const auto& e : detail::catalog_table()) {
        if (filter.dimension && e.usability_dimension != *filter.dimension) continue;
        if (filter.category && e.category != *filter.category) continue;
        if (filter.keyword && detail::lower(e.attribute).find(needle) == std::string::npos) continue;
        out.push_back(e);
    }
    return out;
}

struct AttributeSelection {
    Category category;
    std::string attribute;
};

/// Goal -> category -> attribute -> alternatives skeleton with every judgment set to a placeholder 1.
/// Categories appear in first-selection order.
inline DecisionModel scaffold_model(const std::vector<AttributeSelection>& selection,
                                    const std::vector<std::string>& alternatives,
                                    std::string goal_name = "Assess chatbot quality") {
    if (selection.empty()) throw Error(ErrorCode::EmptySelection, "select at least one attribute");
    if (alternatives.size() < 2) throw Error(ErrorCode::TooFewAlternatives, "at least 2 alternatives are required");

    auto unit_pairs = [](const std::vector<std::string>& names) {
        std::vector<PairwiseJudgment> judgments;
        for (std::size_t a = 0; a < names.size(); ++a) {
            for (std::size_t b = a + 1; b < names.size(); ++b) judgments.push_back({names[a], names[b], Ratio(1), true});
        }
        return judgments;
    };

    DecisionModel model;
    model.goal.name = std::move(goal_name);
    for (const auto& name : alternatives) {
        if (name.empty()) throw Error(ErrorCode::EmptyName, "alternative with empty name");
        if (std::any_of(model.alternatives.begin(), model.alternatives.end(),
                        [&](const AlternativeDecl& a) { return a.name == name; })) {
            throw Error(ErrorCode::DuplicateAlternative, "alternative " + name + " listed twice");
        }
        model.alternatives.push_back({name, {}});
    }

    for (const auto& pick : selection) {
        if (pick.attribute.empty()) throw Error(ErrorCode::EmptyName, "attribute with empty name");
        std::string category(to_string(pick.category));
        auto it = std::find_if(model.goal.children.begin(), model.goal.children.end(),
                               [&](const Node& n) { return n.name == category; });
        if (it == model.goal.children.end()) {
            model.goal.children.push_back(Node{category, {}, {}, {}, false});
            it = std::prev(model.goal.children.end());
        }
        if (std::any_of(it->children.begin(), it->children.end(), [&](const Node& n) { return n.name == pick.attribute; })) {
            throw Error(ErrorCode::DuplicateChild, "attribute " + pick.attribute + " selected twice under " + category);
        }
        Node leaf;
        leaf.name = pick.attribute;
        leaf.compares_alternatives = true;
        leaf.judgments = unit_pairs(alternatives);
        it->children.push_back(std::move(leaf));
    }

    auto child_names = [](const Node& n) {
        std::vector<std::string> names;
        for (const auto& c : n.children) names.push_back(c.name);
        return names;
    };
    for (auto& category : model.goal.children) category.judgments = unit_pairs(child_names(category));
    model.goal.judgments = unit_pairs(child_names(model.goal));
    return model;
}

enum class MetricKind { SuccessRate, RangeRate, ScaledScore };

inline std::string_view to_string(MetricKind k) {
    switch (k) {
        case MetricKind::SuccessRate: return "SUCCESS_RATE";
        case MetricKind::RangeRate: return "RANGE_RATE";
        case MetricKind::ScaledScore: return "SCALED_SCORE";
    }
    return "UNKNOWN";
}

inline std::optional<MetricKind> parse_metric_kind(std::string_view text) {
    for (auto k : {MetricKind::SuccessRate, MetricKind::RangeRate, MetricKind::ScaledScore}) {
        if (to_string(k) == text) return k;
    }
    return std::nullopt;
}

struct RateRange {
    double low = 0.0;
    double high = 0.0;
    friend bool operator==(const RateRange&, const RateRange&) = default;
};

struct ScoredValue {
    double mean = 0.0;
    double stddev = 0.0;
    friend bool operator==(const ScoredValue&, const ScoredValue&) = default;
};

/// rate (0..1), rate range (0..1 each, low <= high), or mean/stddev on a 0..100 scale.
using MetricValue = std::variant<double, RateRange, ScoredValue>;

struct MetricRecord {
    std::string attribute;
    std::string metric_name;
    MetricKind kind = MetricKind::SuccessRate;
    std::vector<std::pair<std::string, MetricValue>> values;

    friend bool operator==(const MetricRecord&, const MetricRecord&) = default;
};

/// Throws Error(BadMetric) when a value does not fit the record's kind or range.
inline void check_metric(const MetricRecord& record) {
    auto fail = [&](const std::string& why) {
        throw Error(ErrorCode::BadMetric, "metric for " + record.attribute + ": " + why);
    };
    auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    for (const auto& [alternative, value] : record.values) {
        switch (record.kind) {
            case MetricKind::SuccessRate: {
                auto* rate = std::get_if<double>(&value);
                if (!rate) fail("SUCCESS_RATE needs a single rate for " + alternative);
                if (!unit(*rate)) fail("rate for " + alternative + " must lie in [0, 1]");
                break;
            }
            case MetricKind::RangeRate: {
                auto* range = std::get_if<RateRange>(&value);
                if (!range) fail("RANGE_RATE needs a low/high pair for " + alternative);
                if (!unit(range->low) || !unit(range->high) || range->low > range->high) {
                    fail("range for " + alternative + " must satisfy 0 <= low <= high <= 1");
                }
                break;
            }
            case MetricKind::ScaledScore: {
                auto* score = std::get_if<ScoredValue>(&value);
                if (!score) fail("SCALED_SCORE needs mean and stddev for " + alternative);
                if (score->mean < 0.0 || score->mean > 100.0 || score->stddev < 0.0) {
                    fail("score for " + alternative + " needs mean in [0, 100] and stddev >= 0");
                }
                break;
            }
        }
    }
}

/// The example evidence for the nine attributes of the sample OLD/NEW chatbot assessment,
/// keyed by the criterion names used in the sample model.
inline std::vector<MetricRecord> example_metric_records() {
    using V = std::vector<std::pair<std::string, MetricValue>>;
    return {
        {"UnexpectedInput", "% of successes", MetricKind::RangeRate, V{{"OLD", RateRange{0.86, 0.92}}, {"NEW", RateRange{0.91, 0.93}}}},
        {"Escalation", "% of successes", MetricKind::SuccessRate, V{{"OLD", 0.80}, {"NEW", 1.00}}},
        {"Transparent", "% of users who correctly classify", MetricKind::SuccessRate, V{{"OLD", 1.00}, {"NEW", 1.00}}},
        {"ThemedDiscussion", "0 (low) .. 100 (high)", MetricKind::ScaledScore, V{{"OLD", ScoredValue{72, 8}}, {"NEW", ScoredValue{85, 12}}}},
        {"SpecificQs", "% of successes", MetricKind::RangeRate, V{{"OLD", RateRange{0.68, 0.82}}, {"NEW", RateRange{0.80, 0.85}}}},
        {"Personality", "0 (low) .. 100 (high)", MetricKind::ScaledScore, V{{"OLD", ScoredValue{89, 3}}, {"NEW", ScoredValue{96, 3}}}},
        {"Entertaining", "0 (low) .. 100 (high)", MetricKind::ScaledScore, V{{"OLD", ScoredValue{50, 21}}, {"NEW", ScoredValue{66, 4}}}},
        {"MeaningIntent", "% of successes", MetricKind::RangeRate, V{{"OLD", RateRange{0.85, 0.90}}, {"NEW", RateRange{0.82, 0.86}}}},
        {"SocialCues", "% of successes", MetricKind::SuccessRate, V{{"OLD", 0.78}, {"NEW", 0.77}}},
    };
}

struct Evidence {
    NodePath leaf;
    MetricRecord record;
};

/// A model plus measured evidence shown next to judgments. Evidence never enters the math.
struct AnnotatedModel {
    DecisionModel model;
    std::vector<Evidence> evidence;
};

namespace detail {

inline void collect_leaves(const Node& node, NodePath& path, std::vector<NodePath>& out) {
    if (node.is_leaf()) {
        out.push_back(path);
        return;
    }
    for (const auto& child : node.children) {
        path.push_back(child.name);
        collect_leaves(child, path, out);
        path.pop_back();
    }
}

} // namespace detail

inline std::vector<NodePath> leaf_paths(const DecisionModel& model) {
    std::vector<NodePath> out;
    NodePath path{std::string(kGoalSegment)};
    detail::collect_leaves(model.goal, path, out);
    return out;
}

/// A record's attribute is a leaf name, or a full slash path when names repeat across categories.
/// A bare name that matches several leaves attaches to each of them.
inline AnnotatedModel attach_metrics(const DecisionModel& model, const std::vector<MetricRecord>& records) {
    AnnotatedModel annotated{model, {}};
    const auto leaves = leaf_paths(model);
    const auto alternatives = model.alternative_names();
    for (const auto& record : records) {
        check_metric(record);
        for (const auto& [alternative, _] : record.values) {
            if (std::find(alternatives.begin(), alternatives.end(), alternative) == alternatives.end()) {
                throw Error(ErrorCode::UnknownAlternative,
                            "metric for " + record.attribute + " names unknown alternative " + alternative);
            }
        }
        bool attached = false;
        bool by_path = record.attribute.find('/') != std::string::npos;
        for (const auto& leaf : leaves) {
            if (by_path ? join_path(leaf) == record.attribute : leaf.back() == record.attribute) {
                annotated.evidence.push_back({leaf, record});
                attached = true;
            }
        }
        if (!attached) {
            throw Error(ErrorCode::UnknownAttribute, "no leaf criterion named " + record.attribute);
        }
    }
    return annotated;
}

// ---------------------------------------------------------------------------------------------
// Delimited import/export: one line per (record, alternative).

inline constexpr std::string_view kMetricCsvHeader = "attribute,metric_name,kind,alternative,value,low,high,mean,stddev";

namespace detail {

inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string format_number(double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

inline std::vector<std::vector<std::string>> read_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"' && field.empty()) {
            quoted = any = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            if (any || !field.empty()) {
                row.push_back(std::move(field));
                rows.push_back(std::move(row));
            }
            row.clear();
            field.clear();
            any = false;
        } else {
            field += c;
            any = true;
        }
    }
    if (quoted) throw Error(ErrorCode::BadMetric, "unterminated quoted field");
    if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline double csv_number(const std::string& cell, std::size_t line, std::string_view column) {
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
    if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw Error(ErrorCode::BadMetric, "line " + std::to_string(line) + ": column " + std::string(column) +
                                              " needs a number, got '" + cell + "'");
    }
    return x;
}

} // namespace detail

inline std::string write_metrics_csv(const std::vector<MetricRecord>& records) {
    std::ostringstream out;
    out << kMetricCsvHeader << "\n";
    for (const auto& r : records) {
        for (const auto& [alternative, value] : r.values) {
            out << detail::csv_field(r.attribute) << ',' << detail::csv_field(r.metric_name) << ',' << to_string(r.kind)
                << ',' << detail::csv_field(alternative) << ',';
            if (auto* rate = std::get_if<double>(&value)) {
                out << detail::format_number(*rate) << ",,,,";
            } else if (auto* range = std::get_if<RateRange>(&value)) {
                out << ',' << detail::format_number(range->low) << ',' << detail::format_number(range->high) << ",,";
            } else {
                const auto& s = std::get<ScoredValue>(value);
                out << ",,," << detail::format_number(s.mean) << ',' << detail::format_number(s.stddev);
            }
            out << "\n";
        }
    }
    return out.str();
}

/// Consecutive lines with the same attribute, metric name and kind form one record.
inline std::vector<MetricRecord> read_metrics_csv(std::string_view text) {
    auto rows = detail::read_csv(text);
    if (rows.empty()) throw Error(ErrorCode::BadMetric, "metric file is empty");
    std::string header;
    for (std::size_t i = 0; i < rows[0].size(); ++i) header += (i ? "," : "") + rows[0][i];
    if (header != kMetricCsvHeader) {
        throw Error(ErrorCode::BadMetric, "metric file header must be '" + std::string(kMetricCsvHeader) + "'");
    }

    std::vector<MetricRecord> records;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::size_t line = r + 1;
        if (row.size() != 9) {
            throw Error(ErrorCode::BadMetric, "line " + std::to_string(line) + ": expected 9 fields, got " +
                                                  std::to_string(row.size()));
        }
        auto kind = parse_metric_kind(row[2]);
        if (!kind) throw Error(ErrorCode::BadMetric, "line " + std::to_string(line) + ": unknown kind '" + row[2] + "'");
        MetricValue value;
        switch (*kind) {
            case MetricKind::SuccessRate: value = detail::csv_number(row[4], line, "value"); break;
            case MetricKind::RangeRate:
                value = RateRange{detail::csv_number(row[5], line, "low"), detail::csv_number(row[6], line, "high")};
                break;
            case MetricKind::ScaledScore:
                value = ScoredValue{detail::csv_number(row[7], line, "mean"), detail::csv_number(row[8], line, "stddev")};
                break;
        }
        if (records.empty() || records.back().attribute != row[0] || records.back().metric_name != row[1] ||
            records.back().kind != *kind) {
            records.push_back({row[0], row[1], *kind, {}});
        }
        records.back().values.emplace_back(row[3], value);
        check_metric(records.back());
    }
    return records;
}

} // namespace ahp
