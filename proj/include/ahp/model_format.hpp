#pragma once

// Reader and writer for the v2.0 AHP model file: a constrained YAML subset with block mappings,
// block sequences, single-line or bracket-balanced flow sequences, one anchor/alias pair on
// `Alternatives`, comments, and folded/literal block scalars.

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ahp/model.hpp"

namespace ahp {

struct SourceSpan {
    int line = 1;
    int column = 1;

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class ParseErrorKind { Indentation, UnknownKey, BadRatio, UnresolvedAlias, MissingSection, BadVersion, Syntax };

inline std::string_view to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::Indentation: return "INDENTATION";
        case ParseErrorKind::UnknownKey: return "UNKNOWN_KEY";
        case ParseErrorKind::BadRatio: return "BAD_RATIO";
        case ParseErrorKind::UnresolvedAlias: return "UNRESOLVED_ALIAS";
        case ParseErrorKind::MissingSection: return "MISSING_SECTION";
        case ParseErrorKind::BadVersion: return "BAD_VERSION";
        case ParseErrorKind::Syntax: return "SYNTAX";
    }
    return "UNKNOWN";
}

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, SourceSpan span, const std::string& message)
        : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " +
                             std::string(to_string(kind)) + ": " + message),
          kind_(kind), span_(span), detail_(message) {}

    ParseErrorKind kind() const noexcept { return kind_; }
    const SourceSpan& span() const noexcept { return span_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ParseErrorKind kind_;
    SourceSpan span_;
    std::string detail_;
};

/// Non-fatal parse findings (unknown keys).
struct ParseWarning {
    SourceSpan span;
    ParseErrorKind kind = ParseErrorKind::UnknownKey;
    std::string message;
};

namespace yaml_subset {

struct YNode;

struct YEntry {
    std::string key;
    SourceSpan span;
};

struct YNode {
    enum class Kind { Null, Scalar, Map, Seq, Alias };
    Kind kind = Kind::Null;
    std::string text;  // scalar value or alias name
    std::string anchor;
    std::string comment;  // trailing comment on the node's line
    SourceSpan span;
    std::vector<std::pair<YEntry, YNode>> map;
    std::vector<YNode> seq;

    const YNode* find(std::string_view key) const {
        for (const auto& [entry, value] : map) {
            if (entry.key == key) return &value;
        }
        return nullptr;
    }
};

struct Line {
    int number = 0;
    int indent = 0;
    std::string_view raw;      // whole line without the newline
    std::string_view content;  // after indentation, comment stripped, right-trimmed
    std::string comment;       // text after '#', trimmed
    bool blank = true;         // empty or comment-only
};

inline std::string_view rtrim(std::string_view s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return rtrim(s);
}

class Reader {
public:
    explicit Reader(std::string_view text) {
        std::size_t start = 0;
        int number = 1;
        while (start < text.size()) {
            auto nl = text.find('\n', start);
            auto raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
            lines_.push_back(split_line(raw, number++));
            if (nl == std::string_view::npos) break;
            start = nl + 1;
        }
        // a leading UTF-8 byte order mark is tolerated
        if (!lines_.empty() && lines_[0].raw.starts_with("\xEF\xBB\xBF")) {
            lines_[0] = split_line(lines_[0].raw.substr(3), 1);
        }
    }

    YNode parse_document() {
        std::size_t i = next_significant(0);
        if (i == lines_.size()) throw ParseError(ParseErrorKind::MissingSection, {1, 1}, "document is empty");
        YNode root = parse_block(-1);
        if (std::size_t j = next_significant(pos_); j != lines_.size()) {
            throw ParseError(ParseErrorKind::Indentation, {lines_[j].number, lines_[j].indent + 1},
                             "content outside the top-level mapping");
        }
        return root;
    }

private:
    static Line split_line(std::string_view raw, int number) {
        Line line;
        line.number = number;
        line.raw = rtrim(raw);
        std::size_t i = 0;
        while (i < line.raw.size() && (line.raw[i] == ' ' || line.raw[i] == '\t')) {
            if (line.raw[i] == '\t') {
                // tabs are only an error when the line carries content
                auto rest = trim(line.raw.substr(i));
                if (!rest.empty() && rest.front() != '#') {
                    throw ParseError(ParseErrorKind::Indentation, {number, static_cast<int>(i) + 1},
                                     "tab characters are not allowed in indentation");
                }
            }
            ++i;
        }
        line.indent = static_cast<int>(i);
        auto body = line.raw.substr(i);
        char quote = 0;
        std::size_t cut = body.size();
        for (std::size_t k = 0; k < body.size(); ++k) {
            char c = body[k];
            if (quote) {
                if (c == '\\' && quote == '"') { ++k; continue; }
                if (c == quote) quote = 0;
                continue;
            }
            if (c == '"' || c == '\'') {
                if (k == 0 || body[k - 1] == ' ' || body[k - 1] == '[' || body[k - 1] == ',' || body[k - 1] == ':' ||
                    body[k - 1] == '-') {
                    quote = c;
                }
                continue;
            }
            if (c == '#' && (k == 0 || body[k - 1] == ' ' || body[k - 1] == '\t')) {
                cut = k;
                break;
            }
        }
        line.content = rtrim(body.substr(0, cut));
        if (cut < body.size()) line.comment = std::string(trim(body.substr(cut + 1)));
        line.blank = line.content.empty();
        return line;
    }

    std::size_t next_significant(std::size_t from) const {
        while (from < lines_.size() && lines_[from].blank) ++from;
        return from;
    }

    static bool is_seq_item(std::string_view content) {
        return content == "-" || content.starts_with("- ");
    }

    SourceSpan span_of(const Line& line, std::size_t offset = 0) const {
        return {line.number, line.indent + 1 + static_cast<int>(offset)};
    }

    // Parses the block whose lines are indented deeper than parent_indent.
    YNode parse_block(int parent_indent) {
        std::size_t i = next_significant(pos_);
        if (i == lines_.size() || lines_[i].indent <= parent_indent) {
            YNode null;
            if (i < lines_.size()) null.span = span_of(lines_[i]);
            return null;
        }
        pos_ = i;
        if (is_seq_item(lines_[i].content)) return parse_seq(lines_[i].indent);
        return parse_map(lines_[i].indent);
    }

    static std::optional<std::size_t> find_key_colon(std::string_view s) {
        char quote = 0;
        int depth = 0;
        for (std::size_t k = 0; k < s.size(); ++k) {
            char c = s[k];
            if (quote) {
                if (c == '\\' && quote == '"') { ++k; continue; }
                if (c == quote) quote = 0;
                continue;
            }
            if ((c == '"' || c == '\'') && k == 0) { quote = c; continue; }
            if (c == '[' || c == '{') ++depth;
            if (c == ']' || c == '}') --depth;
            if (c == ':' && depth == 0 && (k + 1 == s.size() || s[k + 1] == ' ' || s[k + 1] == '\t')) return k;
        }
        return std::nullopt;
    }

    YNode parse_map(int indent) {
        YNode node;
        node.kind = YNode::Kind::Map;
        node.span = span_of(lines_[pos_]);
        while (true) {
            std::size_t i = next_significant(pos_);
            if (i == lines_.size() || lines_[i].indent < indent) break;
            const Line& line = lines_[i];
            if (line.indent > indent) {
                throw ParseError(ParseErrorKind::Indentation, span_of(line),
                                 "unexpected indentation (expected column " + std::to_string(indent + 1) + ")");
            }
            if (is_seq_item(line.content)) {
                throw ParseError(ParseErrorKind::Syntax, span_of(line), "sequence item where a mapping key was expected");
            }
            auto colon = find_key_colon(line.content);
            if (!colon) throw ParseError(ParseErrorKind::Syntax, span_of(line), "expected 'key: value'");

            YEntry entry;
            entry.key = unquote(trim(line.content.substr(0, *colon)), span_of(line));
            entry.span = span_of(line);
            if (entry.key.empty()) throw ParseError(ParseErrorKind::Syntax, span_of(line), "empty mapping key");
            for (const auto& [existing, _] : node.map) {
                if (existing.key == entry.key) {
                    throw ParseError(ParseErrorKind::Syntax, span_of(line), "duplicate key '" + entry.key + "'");
                }
            }
            pos_ = i + 1;
            auto rest = trim(line.content.substr(*colon + 1));
            YNode value = parse_value(line, rest, *colon + 1, indent);
            node.map.emplace_back(std::move(entry), std::move(value));
        }
        return node;
    }

    // Value of `key:` on `line` where `rest` is the text after the colon. pos_ is the next line.
    YNode parse_value(const Line& line, std::string_view rest, std::size_t offset, int indent) {
        std::string anchor;
        if (rest.starts_with("&")) {
            auto end = rest.find_first_of(" \t");
            anchor = std::string(rest.substr(1, end == std::string_view::npos ? std::string_view::npos : end - 1));
            if (anchor.empty()) throw ParseError(ParseErrorKind::Syntax, span_of(line, offset), "empty anchor name");
            rest = end == std::string_view::npos ? std::string_view{} : trim(rest.substr(end));
        }

        YNode value;
        if (rest.empty()) {
            std::size_t j = next_significant(pos_);
            if (j < lines_.size() && lines_[j].indent > indent) {
                value = parse_block(indent);
            } else if (j < lines_.size() && lines_[j].indent == indent && is_seq_item(lines_[j].content)) {
                pos_ = j;
                value = parse_seq(indent);
            } else {
                value.span = span_of(line, offset);
            }
        } else if (rest.starts_with("*")) {
            value.kind = YNode::Kind::Alias;
            value.text = std::string(rest.substr(1));
            value.span = span_of(line, offset + 1);
            if (value.text.empty() || value.text.find_first_of(" \t") != std::string::npos) {
                throw ParseError(ParseErrorKind::Syntax, value.span, "malformed alias");
            }
        } else if (rest.front() == '>' || rest.front() == '|') {
            value = parse_block_scalar(line, rest, indent);
        } else if (rest.front() == '[') {
            value = parse_flow_seq(line, rest);
        } else if (rest.front() == '{') {
            throw ParseError(ParseErrorKind::Syntax, span_of(line, offset), "flow mappings are not supported");
        } else {
            value = scalar_node(rest, span_of(line, offset + 1));
        }
        value.anchor = std::move(anchor);
        if (value.comment.empty()) value.comment = line.comment;
        return value;
    }

    YNode parse_seq(int indent) {
        YNode node;
        node.kind = YNode::Kind::Seq;
        node.span = span_of(lines_[pos_]);
        while (true) {
            std::size_t i = next_significant(pos_);
            if (i == lines_.size() || lines_[i].indent < indent) break;
            const Line& line = lines_[i];
            if (line.indent > indent) {
                throw ParseError(ParseErrorKind::Indentation, span_of(line), "unexpected indentation in sequence");
            }
            if (!is_seq_item(line.content)) break;
            pos_ = i + 1;
            auto rest = trim(line.content.substr(1));
            YNode item;
            if (rest.empty()) {
                item = parse_block(indent);
            } else if (rest.front() == '[') {
                item = parse_flow_seq(line, rest);
            } else if (rest.front() == '{' || find_key_colon(rest)) {
                throw ParseError(ParseErrorKind::Syntax, span_of(line, 2), "mappings inside sequences are not supported");
            } else if (rest.front() == '*' || rest.front() == '&') {
                throw ParseError(ParseErrorKind::Syntax, span_of(line, 2), "anchors and aliases are not allowed here");
            } else {
                item = scalar_node(rest, span_of(line, 2));
            }
            if (item.comment.empty()) item.comment = line.comment;
            node.seq.push_back(std::move(item));
        }
        return node;
    }

    YNode parse_block_scalar(const Line& line, std::string_view header, int indent) {
        bool folded = header.front() == '>';
        char chomp = 'c';
        for (char c : header.substr(1)) {
            if (c == '-') chomp = 's';
            else if (c == '+') chomp = 'k';
            else if (c >= '1' && c <= '9') {
                // explicit indentation indicators are outside the supported subset
                throw ParseError(ParseErrorKind::Syntax, span_of(line), "block scalar indentation indicators are not supported");
            } else if (c != ' ') {
                throw ParseError(ParseErrorKind::Syntax, span_of(line), "malformed block scalar header");
            }
        }

        YNode node;
        node.kind = YNode::Kind::Scalar;
        node.span = span_of(line);
        std::vector<std::string_view> body;
        int content_indent = -1;
        std::size_t i = pos_;
        for (; i < lines_.size(); ++i) {
            auto raw = lines_[i].raw;
            auto stripped = trim(raw);
            if (stripped.empty()) {
                body.emplace_back();
                continue;
            }
            int ind = lines_[i].indent;
            if (content_indent < 0) {
                if (ind <= indent) break;
                content_indent = ind;
            }
            if (ind < content_indent) break;
            body.push_back(raw.substr(static_cast<std::size_t>(content_indent)));
        }
        // trailing blank lines belong to chomping, not to the following content
        std::size_t trailing = 0;
        while (!body.empty() && body.back().empty()) {
            body.pop_back();
            ++trailing;
        }
        pos_ = i;

        std::string text;
        for (std::size_t k = 0; k < body.size(); ++k) {
            if (k > 0) {
                if (!folded || body[k].empty()) text += '\n';
                else if (!body[k - 1].empty()) text += ' ';
            }
            text += std::string(body[k]);
        }
        if (!body.empty()) {
            if (chomp == 'c') text += '\n';
            if (chomp == 'k') text += std::string(trailing + 1, '\n');
        }
        node.text = std::move(text);
        return node;
    }

    YNode parse_flow_seq(const Line& line, std::string_view first) {
        std::string text(first);
        SourceSpan span{line.number, line.indent + 1 + static_cast<int>(line.content.size() - first.size())};
        auto balance = [](std::string_view s) {
            int depth = 0;
            char quote = 0;
            for (std::size_t k = 0; k < s.size(); ++k) {
                char c = s[k];
                if (quote) {
                    if (c == '\\' && quote == '"') { ++k; continue; }
                    if (c == quote) quote = 0;
                } else if (c == '"' || c == '\'') {
                    quote = c;
                } else if (c == '[') {
                    ++depth;
                } else if (c == ']') {
                    --depth;
                }
            }
            return depth;
        };
        std::string comment = line.comment;
        while (balance(text) > 0) {
            std::size_t j = next_significant(pos_);
            if (j == lines_.size()) throw ParseError(ParseErrorKind::Syntax, span, "unterminated '['");
            text += ' ';
            text += std::string(lines_[j].content);
            if (!lines_[j].comment.empty()) comment = lines_[j].comment;
            pos_ = j + 1;
        }
        if (text.back() != ']' || balance(text) != 0) {
            throw ParseError(ParseErrorKind::Syntax, span, "malformed flow sequence");
        }

        YNode node;
        node.kind = YNode::Kind::Seq;
        node.span = span;
        node.comment = comment;
        std::string_view inner = std::string_view(text).substr(1, text.size() - 2);
        if (trim(inner).empty()) return node;

        std::size_t start = 0;
        char quote = 0;
        for (std::size_t k = 0; k <= inner.size(); ++k) {
            if (k < inner.size()) {
                char c = inner[k];
                if (quote) {
                    if (c == '\\' && quote == '"') { ++k; continue; }
                    if (c == quote) quote = 0;
                    continue;
                }
                if (c == '"' || c == '\'') { quote = c; continue; }
                if (c == '[' || c == '{') throw ParseError(ParseErrorKind::Syntax, span, "nested flow collections are not supported");
                if (c != ',') continue;
            }
            auto item = trim(inner.substr(start, k - start));
            if (item.empty()) throw ParseError(ParseErrorKind::Syntax, span, "empty flow sequence entry");
            node.seq.push_back(scalar_node(item, span));
            start = k + 1;
        }
        return node;
    }

    static std::string unquote(std::string_view s, SourceSpan span) {
        if (s.size() >= 1 && (s.front() == '"' || s.front() == '\'')) {
            char q = s.front();
            if (s.size() < 2 || s.back() != q) throw ParseError(ParseErrorKind::Syntax, span, "unterminated quoted scalar");
            auto body = s.substr(1, s.size() - 2);
            std::string out;
            for (std::size_t k = 0; k < body.size(); ++k) {
                char c = body[k];
                if (q == '\'' && c == '\'' && k + 1 < body.size() && body[k + 1] == '\'') {
                    out += '\'';
                    ++k;
                } else if (q == '"' && c == '\\' && k + 1 < body.size()) {
                    char e = body[++k];
                    switch (e) {
                        case 'n': out += '\n'; break;
                        case 't': out += '\t'; break;
                        case '"': out += '"'; break;
                        case '\\': out += '\\'; break;
                        case '/': out += '/'; break;
                        default: throw ParseError(ParseErrorKind::Syntax, span, std::string("unsupported escape \\") + e);
                    }
                } else {
                    out += c;
                }
            }
            return out;
        }
        return std::string(s);
    }

    static YNode scalar_node(std::string_view text, SourceSpan span) {
        YNode node;
        node.span = span;
        bool quoted = !text.empty() && (text.front() == '"' || text.front() == '\'');
        if (!quoted && (text == "~" || text == "null" || text == "Null" || text == "NULL")) return node;
        node.kind = YNode::Kind::Scalar;
        node.text = unquote(text, span);
        return node;
    }

    std::vector<Line> lines_;
    std::size_t pos_ = 0;
};

} // namespace yaml_subset

namespace detail {

using yaml_subset::YNode;

class ModelBuilder {
public:
    explicit ModelBuilder(std::vector<ParseWarning>* warnings) : warnings_(warnings) {}

    DecisionModel build(const YNode& root) {
        if (root.kind != YNode::Kind::Map) {
            throw ParseError(ParseErrorKind::Syntax, root.span, "document must be a mapping of Version, Alternatives and Goal");
        }
        for (const auto& [entry, value] : root.map) {
            if (entry.key != "Version" && entry.key != "Alternatives" && entry.key != "Goal") {
                warn(entry.span, "unknown top-level key '" + entry.key + "' ignored");
            }
        }

        DecisionModel model;
        const YNode* version = root.find("Version");
        if (!version) throw ParseError(ParseErrorKind::MissingSection, root.span, "missing 'Version'");
        if (version->kind != YNode::Kind::Scalar || version->text != "2.0") {
            throw ParseError(ParseErrorKind::BadVersion, version->span,
                             "unsupported version '" + version->text + "' (expected 2.0)");
        }
        model.version = version->text;

        const YNode* alternatives = root.find("Alternatives");
        if (!alternatives) throw ParseError(ParseErrorKind::MissingSection, root.span, "missing 'Alternatives'");
        anchor_ = alternatives->anchor;
        read_alternatives(*alternatives, model);

        const YNode* goal = root.find("Goal");
        if (!goal) throw ParseError(ParseErrorKind::MissingSection, root.span, "missing 'Goal'");
        if (goal->kind != YNode::Kind::Map) throw ParseError(ParseErrorKind::Syntax, goal->span, "'Goal' must be a mapping");
        model.goal = read_node(*goal, "", true, &model.author);
        return model;
    }

private:
    void warn(SourceSpan span, std::string message) {
        if (warnings_) warnings_->push_back({span, ParseErrorKind::UnknownKey, std::move(message)});
    }

    static void reject_anchor(const YNode& node) {
        if (!node.anchor.empty()) {
            throw ParseError(ParseErrorKind::Syntax, node.span, "anchors are only supported on 'Alternatives'");
        }
    }

    static std::string scalar(const YNode& node, std::string_view what) {
        reject_anchor(node);
        if (node.kind == YNode::Kind::Null) return {};
        if (node.kind != YNode::Kind::Scalar) {
            throw ParseError(ParseErrorKind::Syntax, node.span, std::string(what) + " must be a scalar");
        }
        return node.text;
    }

    void read_alternatives(const YNode& node, DecisionModel& model) {
        if (node.kind == YNode::Kind::Null) return;
        if (node.kind != YNode::Kind::Map) {
            throw ParseError(ParseErrorKind::Syntax, node.span, "'Alternatives' must be a mapping of alternative names");
        }
        for (const auto& [entry, value] : node.map) {
            AlternativeDecl alt;
            alt.name = std::string(yaml_subset::trim(entry.key));
            reject_anchor(value);
            if (value.kind == YNode::Kind::Map) {
                for (const auto& [attr, attr_value] : value.map) {
                    alt.attributes.emplace_back(attr.key, scalar(attr_value, "alternative attribute"));
                }
            } else if (value.kind != YNode::Kind::Null) {
                throw ParseError(ParseErrorKind::Syntax, value.span,
                                 "alternative '" + alt.name + "' must be empty or a mapping of attributes");
            }
            model.alternatives.push_back(std::move(alt));
        }
    }

    Node read_node(const YNode& map, std::string name, bool is_goal, std::string* author) {
        reject_anchor(map);
        Node node;
        node.name = std::move(name);
        bool has_children = false;
        for (const auto& [entry, value] : map.map) {
            const auto& key = entry.key;
            if (key == "name" && is_goal) {
                node.name = std::string(yaml_subset::trim(scalar(value, "name")));
            } else if (key == "description") {
                node.description = std::string(yaml_subset::trim(scalar(value, "description")));
                while (!node.description.empty() && node.description.back() == '\n') node.description.pop_back();
            } else if (key == "author" && is_goal) {
                *author = std::string(yaml_subset::trim(scalar(value, "author")));
            } else if (key == "preferences") {
                read_preferences(value, node);
            } else if (key == "children") {
                has_children = true;
                read_children(value, node);
            } else {
                warn(entry.span, "unknown key '" + key + "' ignored");
            }
        }
        if (is_goal && node.name.empty()) node.name = std::string(kGoalSegment);
        if (!has_children) {
            throw ParseError(ParseErrorKind::MissingSection, map.span,
                             "node '" + node.name + "' has no 'children' (use '*" +
                                 (anchor_.empty() ? std::string("alternatives") : anchor_) + "' for a leaf)");
        }
        return node;
    }

    void read_preferences(const YNode& prefs, Node& node) {
        reject_anchor(prefs);
        if (prefs.kind == YNode::Kind::Null) return;
        if (prefs.kind != YNode::Kind::Map) throw ParseError(ParseErrorKind::Syntax, prefs.span, "'preferences' must be a mapping");
        for (const auto& [entry, value] : prefs.map) {
            if (entry.key != "pairwise") {
                warn(entry.span, "unsupported preference '" + entry.key + "' ignored");
                continue;
            }
            reject_anchor(value);
            if (value.kind == YNode::Kind::Null) continue;
            if (value.kind != YNode::Kind::Seq) {
                throw ParseError(ParseErrorKind::Syntax, value.span, "'pairwise' must be a sequence of [A, B, ratio] triplets");
            }
            for (const auto& item : value.seq) node.judgments.push_back(read_triplet(item));
        }
    }

    static PairwiseJudgment read_triplet(const YNode& item) {
        if (item.kind != YNode::Kind::Seq || item.seq.size() != 3) {
            throw ParseError(ParseErrorKind::Syntax, item.span, "pairwise entry must be a [A, B, ratio] triplet");
        }
        for (const auto& part : item.seq) {
            if (part.kind != YNode::Kind::Scalar) {
                throw ParseError(ParseErrorKind::Syntax, item.span, "pairwise entry elements must be scalars");
            }
        }
        PairwiseJudgment j;
        j.left = std::string(yaml_subset::trim(item.seq[0].text));
        j.right = std::string(yaml_subset::trim(item.seq[1].text));
        auto value = Ratio::parse(item.seq[2].text);
        if (!value) {
            throw ParseError(ParseErrorKind::BadRatio, item.span, "'" + item.seq[2].text + "' is not a ratio like 3 or 1/7");
        }
        j.value = *value;
        j.placeholder = item.comment == "placeholder";
        return j;
    }

    void read_children(const YNode& value, Node& node) {
        if (value.kind == YNode::Kind::Alias) {
            if (anchor_.empty() || value.text != anchor_) {
                throw ParseError(ParseErrorKind::UnresolvedAlias, value.span,
                                 "alias '*" + value.text + "' does not name the Alternatives anchor");
            }
            node.compares_alternatives = true;
            return;
        }
        reject_anchor(value);
        if (value.kind == YNode::Kind::Null) return;  // validation reports the empty node
        if (value.kind != YNode::Kind::Map) throw ParseError(ParseErrorKind::Syntax, value.span, "'children' must be a mapping or an alias");
        for (const auto& [entry, child] : value.map) {
            if (child.kind != YNode::Kind::Map) {
                throw ParseError(ParseErrorKind::Syntax, entry.span, "child '" + entry.key + "' must be a mapping");
            }
            node.children.push_back(read_node(child, std::string(yaml_subset::trim(entry.key)), false, nullptr));
        }
    }

    std::vector<ParseWarning>* warnings_;
    std::string anchor_;
};

} // namespace detail

/// Parses a v2.0 model document. Throws ParseError; unknown keys are reported through `warnings`.
inline DecisionModel parse_model(std::string_view text, std::vector<ParseWarning>* warnings = nullptr) {
    yaml_subset::Reader reader(text);
    auto root = reader.parse_document();
    return detail::ModelBuilder(warnings).build(root);
}

namespace detail {

inline bool needs_quotes(std::string_view s) {
    if (s.empty()) return true;
    if (s.front() == ' ' || s.back() == ' ') return true;
    if (s == "~" || s == "null" || s == "Null" || s == "NULL") return true;
    if (std::string_view("&*!|>'\"%@`[]{},#-?:").find(s.front()) != std::string_view::npos) return true;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '\n' || c == '\t' || c == '\r' || c == ',' || c == '[' || c == ']' || c == '{' || c == '}') return true;
        if (c == ':' && (i + 1 == s.size() || s[i + 1] == ' ')) return true;
        if (c == '#' && i > 0 && s[i - 1] == ' ') return true;
    }
    return false;
}

inline std::string quote_scalar(std::string_view s) {
    if (!needs_quotes(s)) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

inline void write_description(std::ostringstream& out, const std::string& pad, const std::string& text) {
    bool multiline = text.find('\n') != std::string::npos;
    bool plain_lines = text.front() != ' ' && text.back() != ' ';
    if (!plain_lines) {
        out << pad << "description: " << quote_scalar(text) << "\n";
        return;
    }
    out << pad << "description: " << (multiline ? "|" : ">") << "\n";
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        auto line = std::string_view(text).substr(start, nl == std::string::npos ? std::string::npos : nl - start);
        if (line.empty()) out << "\n";
        else out << pad << "  " << line << "\n";
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
}

inline void write_node(std::ostringstream& out, const Node& node, int depth, const std::string& anchor) {
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    if (!node.description.empty()) write_description(out, pad, node.description);
    if (!node.judgments.empty()) {
        out << pad << "preferences:\n" << pad << "  pairwise:\n";
        for (const auto& j : node.judgments) {
            out << pad << "    - [" << quote_scalar(j.left) << ", " << quote_scalar(j.right) << ", " << j.value.to_string()
                << "]";
            if (j.placeholder) out << " # placeholder";
            out << "\n";
        }
    }
    if (node.is_leaf()) {
        out << pad << "children: *" << anchor << "\n";
        return;
    }
    out << pad << "children:\n";
    for (const auto& child : node.children) {
        out << pad << "  " << quote_scalar(child.name) << ":\n";
        write_node(out, child, depth + 2, anchor);
    }
}

} // namespace detail

/// Emits the model in the v2.0 layout (two-space indentation, one triplet per line).
inline std::string serialize_model(const DecisionModel& model) {
    const std::string anchor = "alternatives";
    std::ostringstream out;
    out << "Version: " << model.version << "\n\n";
    out << "Alternatives: &" << anchor << "\n";
    for (const auto& alt : model.alternatives) {
        out << "  " << detail::quote_scalar(alt.name) << ":\n";
        for (const auto& [key, value] : alt.attributes) {
            out << "    " << detail::quote_scalar(key) << ":";
            if (!value.empty()) out << " " << detail::quote_scalar(value);
            out << "\n";
        }
    }
    out << "\nGoal:\n";
    out << "  name: " << detail::quote_scalar(model.goal.name) << "\n";
    Node goal = model.goal;
    std::string description = std::move(goal.description);
    goal.description.clear();
    if (!description.empty()) detail::write_description(out, "  ", description);
    if (!model.author.empty()) out << "  author: " << detail::quote_scalar(model.author) << "\n";
    detail::write_node(out, goal, 1, anchor);
    return out.str();
}

} // namespace ahp
