#pragma once

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ahp/api_server.hpp"
#include "ahp/catalog.hpp"
#include "ahp/model_format.hpp"
#include "ahp/report.hpp"
#include "ahp/synthesis.hpp"

namespace ahp::cli {

enum ExitStatus : int {
    kSuccess = 0,
    kValidationErrors = 1,
    kParseError = 2,
    kStrictConsistencyFailure = 3,
    kUsageError = 4,
};

/// Consistency ratio above which `analyze --strict` fails.
inline constexpr double kStrictThreshold = 0.20;

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        auto first = item.find_first_not_of(' ');
        auto last = item.find_last_not_of(' ');
        out.push_back(first == std::string::npos ? std::string{} : item.substr(first, last - first + 1));
    }
    return out;
}

inline void print_diagnostics(std::ostream& err, const ValidationReport& report) {
    for (const auto& d : report.errors) {
        err << "error: " << (d.path.empty() ? "<model>" : d.path) << ": " << to_string(d.code) << ": " << d.message << "\n";
    }
    for (const auto& d : report.warnings) {
        err << "warning: " << (d.path.empty() ? "<model>" : d.path) << ": " << to_string(d.code) << ": " << d.message << "\n";
    }
}

inline void print_parse_warnings(std::ostream& err, const std::string& file, const std::vector<ParseWarning>& warnings) {
    for (const auto& w : warnings) {
        err << file << ":" << w.span.line << ":" << w.span.column << ": warning: " << to_string(w.kind) << ": "
            << w.message << "\n";
    }
}

struct Loaded {
    DecisionModel model;
    ValidationReport report;
};

// Reads, parses and validates; on failure prints diagnostics and sets `status`.
inline std::optional<Loaded> load(const std::string& file, std::ostream& err, int& status) {
    std::string text;
    try {
        text = read_file(file);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        status = kUsageError;
        return std::nullopt;
    }
    std::vector<ParseWarning> warnings;
    try {
        Loaded loaded;
        loaded.model = parse_model(text, &warnings);
        print_parse_warnings(err, file, warnings);
        loaded.report = validate_model(loaded.model);
        return loaded;
    } catch (const ParseError& e) {
        err << file << ":" << e.span().line << ":" << e.span().column << ": error: " << to_string(e.kind()) << ": "
            << e.detail() << "\n";
        status = kParseError;
        return std::nullopt;
    }
}

inline std::atomic<httplib::Server*> g_server{nullptr};

} // namespace detail

/// Entry point shared by the `ahp` executable and tests. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Analytic Hierarchy Process quality assessment: validate, visualize and analyze decision models", "ahp"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    int status = kSuccess;

    // validate
    std::string validate_file;
    auto* validate = app.add_subcommand("validate", "Check a model file for structural problems");
    validate->add_option("file", validate_file, "Model file (v2.0 format)")->required();

    // visualize
    std::string visualize_file, visualize_format = "ascii";
    auto* visualize = app.add_subcommand("visualize", "Draw the decision hierarchy");
    visualize->add_option("file", visualize_file, "Model file")->required();
    visualize->add_option("--format", visualize_format, "ascii or dot")->check(CLI::IsMember({"ascii", "dot"}));

    // analyze
    std::string analyze_file, analyze_format = "table";
    bool strict = false;
    double warn_threshold = 10.0;
    auto* analyze = app.add_subcommand("analyze", "Compute priorities, consistency and alternative totals");
    analyze->add_option("file", analyze_file, "Model file")->required();
    analyze->add_option("--format", analyze_format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
    analyze->add_flag("--strict", strict, "Exit 3 when any node's consistency ratio exceeds 20%");
    analyze->add_option("--warn-threshold", warn_threshold, "Warn about nodes whose consistency ratio exceeds this percent")
        ->check(CLI::NonNegativeNumber);

    // whatif
    std::string whatif_file, whatif_node, whatif_pair, whatif_value, whatif_format = "table";
    auto* whatif_cmd = app.add_subcommand("whatif", "Re-run the analysis with one judgment changed (nothing is saved)");
    whatif_cmd->add_option("file", whatif_file, "Model file")->required();
    whatif_cmd->add_option("--node", whatif_node, "Slash path of the node, e.g. Goal/Performance/Escalation")->required();
    whatif_cmd->add_option("--pair", whatif_pair, "Judged pair as A,B")->required();
    whatif_cmd->add_option("--value", whatif_value, "New ratio of A over B, e.g. 3 or 1/7")->required();
    whatif_cmd->add_option("--format", whatif_format, "table or json")->check(CLI::IsMember({"table", "json"}));

    // init
    std::vector<std::string> init_attributes;
    std::string init_alternatives, init_output, init_goal = "Assess chatbot quality";
    auto* init = app.add_subcommand("init", "Scaffold a model from quality-attribute categories");
    init->add_option("--attribute", init_attributes, "Category:Name, repeatable (e.g. Performance:Escalation)");
    init->add_option("--alternatives", init_alternatives, "Comma-separated alternatives, e.g. OLD,NEW")->required();
    init->add_option("--goal", init_goal, "Goal name");
    init->add_option("-o,--output", init_output, "Write to this file instead of standard output");

    // serve
    int port = 8080;
    if (const char* env = std::getenv("AHP_PORT")) {
        try {
            port = std::stoi(env);
        } catch (...) {
        }
    }
    std::string ui_dir, host = "127.0.0.1", snapshot_file;
    auto* serve = app.add_subcommand("serve", "Run the HTTP API (and optional browser UI)");
    serve->add_option("--port", port, "Port (default 8080 or $AHP_PORT)")->check(CLI::Range(0, 65535));
    serve->add_option("--host", host, "Bind address");
    serve->add_option("--ui", ui_dir, "Directory of static UI assets served at /")->check(CLI::ExistingDirectory);
    serve->add_option("--snapshot", snapshot_file, "Load sessions from and save them to this file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    if (validate->parsed()) {
        auto loaded = detail::load(validate_file, err, status);
        if (!loaded) return status;
        detail::print_diagnostics(err, loaded->report);
        if (!loaded->report.ok()) {
            out << "invalid: " << loaded->report.errors.size() << " error(s), " << loaded->report.warnings.size()
                << " warning(s)\n";
            return kValidationErrors;
        }
        out << "valid: " << loaded->report.warnings.size() << " warning(s)\n";
        return kSuccess;
    }

    if (visualize->parsed()) {
        auto loaded = detail::load(visualize_file, err, status);
        if (!loaded) return status;
        if (!loaded->report.ok()) {
            detail::print_diagnostics(err, loaded->report);
            return kValidationErrors;
        }
        out << render_tree(loaded->model, visualize_format == "dot" ? ReportFormat::Dot : ReportFormat::AsciiTree);
        return kSuccess;
    }

    if (analyze->parsed()) {
        auto loaded = detail::load(analyze_file, err, status);
        if (!loaded) return status;
        if (!loaded->report.ok()) {
            detail::print_diagnostics(err, loaded->report);
            return kValidationErrors;
        }
        AnalysisResult result;
        try {
            result = evaluate(loaded->model);
        } catch (const Error& e) {
            err << "error: " << e.path() << ": " << to_string(e.code()) << ": " << e.what() << "\n";
            return kValidationErrors;
        }
        ReportFormat format = analyze_format == "json" ? ReportFormat::Json
                              : analyze_format == "csv" ? ReportFormat::Csv
                                                        : ReportFormat::Table;
        out << render_report(result, format);

        bool over_strict = false;
        for (const auto& row : result.rows) {
            if (row.consistency_ratio * 100.0 > warn_threshold) {
                err << "warning: " << join_path(row.path) << ": consistency ratio " << format_percent(row.consistency_ratio)
                    << " exceeds " << warn_threshold << "%\n";
            }
            over_strict = over_strict || row.consistency_ratio > kStrictThreshold;
        }
        if (strict && over_strict) {
            err << "error: consistency ratio above " << format_percent(kStrictThreshold) << " (--strict)\n";
            return kStrictConsistencyFailure;
        }
        return kSuccess;
    }

    if (whatif_cmd->parsed()) {
        auto pair = detail::split_list(whatif_pair);
        auto value = Ratio::parse(whatif_value);
        if (pair.size() != 2 || pair[0].empty() || pair[1].empty()) {
            err << "error: --pair expects A,B\n";
            return kUsageError;
        }
        if (!value || !value->positive()) {
            err << "error: --value expects a positive ratio such as 3 or 1/7\n";
            return kUsageError;
        }
        auto loaded = detail::load(whatif_file, err, status);
        if (!loaded) return status;
        if (!loaded->report.ok()) {
            detail::print_diagnostics(err, loaded->report);
            return kValidationErrors;
        }
        AnalysisDelta delta;
        try {
            delta = ahp::whatif(loaded->model, split_path(whatif_node), pair[0], pair[1], *value);
        } catch (const Error& e) {
            err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
            return kUsageError;
        }
        if (whatif_format == "json") {
            out << to_json(delta).dump(2) << "\n";
            return kSuccess;
        }
        out << "changed " << join_path(delta.changed.path) << " (" << delta.changed.left << ", " << delta.changed.right
            << "): " << delta.changed.old_value.to_string() << " -> " << delta.changed.new_value.to_string() << "\n";
        std::size_t width = std::string_view("Alternative").size();
        for (const auto& a : delta.before.alternatives) width = std::max(width, a.size());
        auto cell = [](const std::string& s) { return ahp::detail::pad_left(s, 7); };
        out << ahp::detail::pad_right("Alternative", width) << "  " << cell("Before") << "  " << cell("After") << "  "
            << cell("Shift") << "\n";
        for (std::size_t i = 0; i < delta.before.alternatives.size(); ++i) {
            std::string shift = format_percent(delta.total_shift[i]);
            if (shift.front() != '-') shift = "+" + shift;
            out << ahp::detail::pad_right(delta.before.alternatives[i], width) << "  "
                << cell(format_percent(delta.before.alternative_totals[i])) << "  "
                << cell(format_percent(delta.after.alternative_totals[i])) << "  " << cell(shift) << "\n";
        }
        return kSuccess;
    }

    if (init->parsed()) {
        std::vector<AttributeSelection> selection;
        for (const auto& spec : init_attributes) {
            auto colon = spec.find(':');
            auto category = colon == std::string::npos ? std::nullopt : parse_category(spec.substr(0, colon));
            if (!category || colon + 1 >= spec.size()) {
                err << "error: --attribute expects Category:Name with a category from the catalog, got '" << spec << "'\n";
                return kUsageError;
            }
            selection.push_back({*category, spec.substr(colon + 1)});
        }
        std::string text;
        try {
            text = serialize_model(scaffold_model(selection, detail::split_list(init_alternatives), init_goal));
        } catch (const Error& e) {
            err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
            return kUsageError;
        }
        if (init_output.empty()) {
            out << text;
        } else {
            std::ofstream file(init_output, std::ios::binary);
            if (!(file << text)) {
                err << "error: cannot write '" << init_output << "'\n";
                return kUsageError;
            }
            out << "wrote " << init_output << "\n";
        }
        return kSuccess;
    }

    if (serve->parsed()) {
        api::Service service;
        if (!snapshot_file.empty()) api::load_snapshot(service, snapshot_file);
        httplib::Server server;
        service.mount(server, ui_dir);
        detail::g_server = &server;
        std::signal(SIGINT, [](int) {
            if (auto* s = detail::g_server.load()) s->stop();
        });
        std::signal(SIGTERM, [](int) {
            if (auto* s = detail::g_server.load()) s->stop();
        });
        out << "listening on http://" << host << ":" << port << std::endl;
        bool ok = server.listen(host, port);
        detail::g_server = nullptr;
        if (!snapshot_file.empty()) api::save_snapshot(service, snapshot_file);
        if (!ok) {
            err << "error: cannot listen on " << host << ":" << port << "\n";
            return kUsageError;
        }
        return kSuccess;
    }
    return kUsageError;
}

} // namespace ahp::cli
