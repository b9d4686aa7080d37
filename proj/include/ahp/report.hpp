#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "ahp/json_io.hpp"
#include "ahp/synthesis.hpp"

namespace ahp {

enum class ReportFormat { Table, Json, Csv, Dot, AsciiTree };

/// `0.662` -> `66.2%`. Never prints a negative zero.
inline std::string format_percent(double fraction) {
    double pct = std::round(fraction * 1000.0) / 10.0;
    if (pct == 0.0) pct = 0.0;  // folds -0.0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", pct);
    return buf;
}

namespace detail {

inline std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

inline std::string pad_right(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

inline std::string rstrip(std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

// Name column (indented two spaces per level), Weight, one column per alternative, Consistency.
// Numeric columns are right-aligned; the trailing Consistency column is left-aligned under its header.
inline std::string render_table(const AnalysisResult& result) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> names;
    for (const auto& row : result.rows) {
        names.push_back(std::string(static_cast<std::size_t>(row.depth) * 2, ' ') + row.name);
        std::vector<std::string> line{format_percent(row.global_weight)};
        for (double v : row.per_alternative) line.push_back(format_percent(v));
        line.push_back(format_percent(row.consistency_ratio));
        cells.push_back(std::move(line));
    }
    std::vector<std::string> header{"Weight"};
    header.insert(header.end(), result.alternatives.begin(), result.alternatives.end());
    header.push_back("Consistency");

    std::size_t name_width = 0;
    for (const auto& n : names) name_width = std::max(name_width, n.size());
    std::vector<std::size_t> widths(header.size(), 0);
    for (std::size_t c = 0; c + 1 < header.size(); ++c) widths[c] = header[c].size();
    for (const auto& line : cells) {
        for (std::size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], line[c].size());
    }

    auto emit = [&](const std::string& name, const std::vector<std::string>& fields) {
        std::string out = pad_right(name, name_width);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            out += "  ";
            out += c + 1 < fields.size() ? pad_left(fields[c], widths[c]) : fields[c];
        }
        return rstrip(out) + "\n";
    };

    std::string out = emit("", header);
    for (std::size_t r = 0; r < cells.size(); ++r) out += emit(names[r], cells[r]);
    return out;
}

inline std::string render_csv(const AnalysisResult& result) {
    std::ostringstream out;
    out << "path,name,depth,global_weight,global_percent,local_weight";
    for (const auto& a : result.alternatives) out << ',' << csv_field(a);
    out << ",consistency_ratio,status\n";
    for (const auto& row : result.rows) {
        out << csv_field(join_path(row.path)) << ',' << csv_field(row.name) << ',' << row.depth << ','
            << format_number(row.global_weight) << ',' << format_percent(row.global_weight) << ','
            << format_number(row.local_weight);
        for (double v : row.per_alternative) out << ',' << format_number(v);
        out << ',' << format_number(row.consistency_ratio) << ',' << to_string(row.status) << "\n";
    }
    return out.str();
}

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

inline void dot_nodes(const Node& node, const std::string& id, std::size_t alternatives, int& counter,
                      std::ostringstream& vertices, std::ostringstream& edges) {
    vertices << "  " << id << " [label=\"" << dot_escape(node.name) << "\"];\n";
    if (node.is_leaf()) {
        for (std::size_t i = 0; i < alternatives; ++i) edges << "  " << id << " -> a" << i << ";\n";
        return;
    }
    for (const auto& child : node.children) {
        std::string child_id = "n" + std::to_string(++counter);
        edges << "  " << id << " -> " << child_id << ";\n";
        dot_nodes(child, child_id, alternatives, counter, vertices, edges);
    }
}

inline void ascii_nodes(const Node& node, const std::vector<std::string>& alternatives, const std::string& prefix,
                        std::ostringstream& out) {
    std::vector<std::string> labels;
    if (node.is_leaf()) labels = alternatives;
    else for (const auto& c : node.children) labels.push_back(c.name);

    for (std::size_t i = 0; i < labels.size(); ++i) {
        bool last = i + 1 == labels.size();
        out << prefix << (last ? "`-- " : "|-- ") << labels[i] << "\n";
        if (!node.is_leaf()) ascii_nodes(node.children[i], alternatives, prefix + (last ? "    " : "|   "), out);
    }
}

} // namespace detail

/// TABLE mirrors the classic AHP results layout; JSON and CSV carry raw weights.
inline std::string render_report(const AnalysisResult& result, ReportFormat format) {
    switch (format) {
        case ReportFormat::Table: return detail::render_table(result);
        case ReportFormat::Json: return to_json(result).dump(2) + "\n";
        case ReportFormat::Csv: return detail::render_csv(result);
        default: throw Error(ErrorCode::BadValue, "render_report supports table, json and csv");
    }
}

/// Hierarchy picture: one vertex per criterion and per alternative; every leaf links to every alternative.
inline std::string render_tree(const DecisionModel& model, ReportFormat format) {
    if (format == ReportFormat::AsciiTree) {
        std::ostringstream out;
        out << model.goal.name << "\n";
        detail::ascii_nodes(model.goal, model.alternative_names(), "", out);
        return out.str();
    }
    if (format != ReportFormat::Dot) throw Error(ErrorCode::BadValue, "render_tree supports dot and ascii");

    std::ostringstream vertices, edges;
    int counter = 0;
    detail::dot_nodes(model.goal, "n0", model.alternatives.size(), counter, vertices, edges);
    for (std::size_t i = 0; i < model.alternatives.size(); ++i) {
        vertices << "  a" << i << " [label=\"" << detail::dot_escape(model.alternatives[i].name) << "\", shape=box];\n";
    }

    std::ostringstream out;
    out << "digraph ahp {\n  rankdir=TB;\n  node [shape=ellipse];\n";
    out << vertices.str() << edges.str() << "}\n";
    return out.str();
}

} // namespace ahp
