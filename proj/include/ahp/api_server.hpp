#pragma once

// HTTP/JSON front end for the browser UI. Handlers are plain member functions returning
// (status, body) so they can be exercised without a socket; `mount` binds them to cpp-httplib.

#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "httplib.h"

#include "ahp/catalog.hpp"
#include "ahp/json_io.hpp"
#include "ahp/model_format.hpp"
#include "ahp/synthesis.hpp"

namespace ahp::api {

struct Response {
    int status = 200;
    Json body;
};

struct SessionState {
    std::string session_id;
    std::optional<DecisionModel> model;
    std::uint64_t revision = 0;
    std::vector<MetricRecord> metrics;
};

inline int http_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownPath:
        case ErrorCode::UnknownPair: return 404;
        case ErrorCode::BadValue:
        case ErrorCode::BadMetric:
        case ErrorCode::BadOrder: return 400;
        default: return 422;
    }
}

inline Response error_response(int status, std::string_view code, const std::string& detail,
                               const std::string& path = {}, std::optional<SourceSpan> span = std::nullopt) {
    Json error{{"code", code}, {"detail", detail}};
    if (!path.empty()) error["path"] = path;
    if (span) error["span"] = {{"line", span->line}, {"column", span->column}};
    return {status, Json{{"error", std::move(error)}}};
}

inline Response error_response(const Error& e) {
    return error_response(http_status(e.code()), to_string(e.code()), e.what(), e.path());
}

inline Response error_response(const ParseError& e) {
    return error_response(400, to_string(e.kind()), e.detail(), {}, e.span());
}

class Service {
public:
    Service() : rng_(std::random_device{}()) {}

    Response create_session() {
        std::lock_guard lock(mutex_);
        std::ostringstream id;
        id << "s" << ++counter_ << "-" << std::hex << (rng_() & 0xffffffffu);
        SessionState state;
        state.session_id = id.str();
        sessions_.emplace(state.session_id, state);
        return {200, Json{{"session_id", state.session_id}, {"revision", 0}}};
    }

    Response get_model(const std::string& id) {
        std::lock_guard lock(mutex_);
        auto* s = find(id);
        if (!s) return unknown_session(id);
        Json body{{"session_id", s->session_id}, {"revision", s->revision}, {"empty", !s->model.has_value()}};
        if (s->model) {
            body["model"] = to_json(*s->model);
            body["text"] = serialize_model(*s->model);
        } else {
            body["model"] = nullptr;
        }
        return {200, std::move(body)};
    }

    /// `body` is the model file text, or JSON {"text": ...} / {"model": {...}} / a structured model object.
    /// The expected revision comes from the query string or a JSON "expected_revision" field.
    Response put_model(const std::string& id, const std::string& body, std::optional<std::uint64_t> expected_revision) {
        DecisionModel model;
        std::vector<ParseWarning> warnings;
        try {
            auto first = body.find_first_not_of(" \t\r\n");
            if (first != std::string::npos && body[first] == '{') {
                Json j = Json::parse(body);
                if (j.contains("expected_revision") && !expected_revision) {
                    expected_revision = j.at("expected_revision").get<std::uint64_t>();
                }
                if (j.contains("text")) model = parse_model(j.at("text").get<std::string>(), &warnings);
                else if (j.contains("model")) model = model_from_json(j.at("model"));
                else model = model_from_json(j);
            } else {
                model = parse_model(body, &warnings);
            }
        } catch (const ParseError& e) {
            return error_response(e);
        } catch (const Json::exception& e) {
            return error_response(400, "BAD_JSON", e.what());
        } catch (const Error& e) {
            return error_response(400, to_string(e.code()), e.what(), e.path());
        }

        auto report = validate_model(model);
        std::lock_guard lock(mutex_);
        auto* s = find(id);
        if (!s) return unknown_session(id);
        if (expected_revision && *expected_revision != s->revision) return revision_conflict(*s, *expected_revision);

        Json out{{"session_id", s->session_id}, {"report", to_json(report)}, {"parse_warnings", to_json(warnings)}};
        if (!report.ok()) {
            out["stored"] = false;
            out["revision"] = s->revision;
            return {422, std::move(out)};
        }
        s->model = std::move(model);
        ++s->revision;
        out["stored"] = true;
        out["revision"] = s->revision;
        return {200, std::move(out)};
    }

    Response analyze(const std::string& id) {
        std::lock_guard lock(mutex_);
        auto* s = find(id);
        if (!s) return unknown_session(id);
        if (!s->model) return error_response(409, "NO_MODEL", "session has no stored model");
        try {
            Json body = to_json(evaluate(*s->model));
            body["revision"] = s->revision;
            return {200, std::move(body)};
        } catch (const Error& e) {
            return error_response(e);
        }
    }

    /// Body: {"path": "Goal/A/B" | [..], "pair": [left, right], "value": "1/7" | number}.
    Response whatif(const std::string& id, const std::string& body) {
        NodePath path;
        std::string left, right;
        std::optional<Ratio> value;
        try {
            Json j = Json::parse(body);
            const Json& p = j.at("path");
            path = p.is_string() ? split_path(p.get<std::string>()) : p.get<NodePath>();
            const Json& pair = j.at("pair");
            if (!pair.is_array() || pair.size() != 2) return error_response(400, "BAD_REQUEST", "pair must be [left, right]");
            left = pair[0].get<std::string>();
            right = pair[1].get<std::string>();
            const Json& v = j.at("value");
            value = v.is_string() ? Ratio::parse(v.get<std::string>()) : Ratio::parse(v.dump());
        } catch (const Json::exception& e) {
            return error_response(400, "BAD_REQUEST", e.what());
        }
        if (!value || !value->positive()) return error_response(400, "BAD_VALUE", "value must be a positive ratio such as 3 or 1/7");

        std::lock_guard lock(mutex_);
        auto* s = find(id);
        if (!s) return unknown_session(id);
        if (!s->model) return error_response(409, "NO_MODEL", "session has no stored model");
        try {
            Json out = to_json(ahp::whatif(*s->model, path, left, right, *value));
            out["revision"] = s->revision;
            return {200, std::move(out)};
        } catch (const Error& e) {
            return error_response(e);
        }
    }

    Response get_metrics(const std::string& id) {
        std::lock_guard lock(mutex_);
        auto* s = find(id);
        if (!s) return unknown_session(id);
        Json records = Json::array();
        for (const auto& r : s->metrics) records.push_back(to_json(r));
        return {200, Json{{"session_id", s->session_id}, {"revision", s->revision}, {"metrics", std::move(records)}}};
    }

    /// Body: JSON array of records (or {"metrics": [...]}), or the delimited metric file.
    Response put_metrics(const std::string& id, const std::string& body, std::optional<std::uint64_t> expected_revision) {
        std::vector<MetricRecord> records;
        try {
            auto first = body.find_first_not_of(" \t\r\n");
            if (first != std::string::npos && (body[first] == '[' || body[first] == '{')) {
                Json j = Json::parse(body);
                if (j.is_object() && j.contains("expected_revision") && !expected_revision) {
                    expected_revision = j.at("expected_revision").get<std::uint64_t>();
                }
                const Json& list = j.is_object() ? j.at("metrics") : j;
                for (const auto& item : list) records.push_back(metric_from_json(item));
            } else {
                records = read_metrics_csv(body);
            }
        } catch (const Json::exception& e) {
            return error_response(400, "BAD_JSON", e.what());
        } catch (const Error& e) {
            return error_response(400, to_string(e.code()), e.what());
        }

        std::lock_guard lock(mutex_);
        auto* s = find(id);
        if (!s) return unknown_session(id);
        if (expected_revision && *expected_revision != s->revision) return revision_conflict(*s, *expected_revision);
        if (!s->model) return error_response(409, "NO_MODEL", "upload a model before attaching metrics");
        Json evidence = Json::array();
        try {
            for (const auto& e : attach_metrics(*s->model, records).evidence) {
                evidence.push_back({{"leaf", join_path(e.leaf)}, {"attribute", e.record.attribute}});
            }
        } catch (const Error& e) {
            return error_response(e);
        }
        s->metrics = std::move(records);
        ++s->revision;
        return {200, Json{{"session_id", s->session_id}, {"revision", s->revision}, {"evidence", std::move(evidence)}}};
    }

    Response catalog(const std::multimap<std::string, std::string>& query) {
        CatalogFilter filter;
        for (const auto& [key, value] : query) {
            if (key == "category") {
                filter.category = parse_category(value);
                if (!filter.category) return error_response(400, "UNKNOWN_CATEGORY", "unknown category '" + value + "'");
            } else if (key == "dimension") {
                filter.dimension = parse_dimension(value);
                if (!filter.dimension) return error_response(400, "BAD_REQUEST", "unknown dimension '" + value + "'");
            } else if (key == "keyword") {
                filter.keyword = value;
            } else {
                return error_response(400, "BAD_REQUEST", "unknown filter '" + key + "'");
            }
        }
        Json entries = Json::array();
        for (const auto& e : catalog_entries(filter)) entries.push_back(to_json(e));
        return {200, Json{{"count", entries.size()}, {"entries", std::move(entries)}}};
    }

    Response health() const { return {200, Json{{"status", "ok"}}}; }

    Json snapshot() const {
        std::lock_guard lock(mutex_);
        Json sessions = Json::array();
        for (const auto& [id, s] : sessions_) {
            Json metrics = Json::array();
            for (const auto& r : s.metrics) metrics.push_back(to_json(r));
            sessions.push_back({{"session_id", id},
                                {"revision", s.revision},
                                {"model", s.model ? to_json(*s.model) : Json(nullptr)},
                                {"metrics", std::move(metrics)}});
        }
        return {{"counter", counter_}, {"sessions", std::move(sessions)}};
    }

    void restore(const Json& snapshot) {
        std::lock_guard lock(mutex_);
        counter_ = snapshot.value("counter", std::uint64_t{0});
        for (const auto& item : snapshot.at("sessions")) {
            SessionState s;
            s.session_id = item.at("session_id").get<std::string>();
            s.revision = item.at("revision").get<std::uint64_t>();
            if (!item.at("model").is_null()) s.model = model_from_json(item.at("model"));
            for (const auto& r : item.at("metrics")) s.metrics.push_back(metric_from_json(r));
            sessions_[s.session_id] = std::move(s);
        }
    }

    /// Registers the routes; static UI assets are served from `ui_dir` at `/` when given.
    void mount(httplib::Server& server, const std::string& ui_dir = {}) {
        auto send = [](httplib::Response& res, const Response& r) {
            res.status = r.status;
            res.set_content(r.body.dump(), "application/json");
        };
        auto expected = [](const httplib::Request& req) -> std::optional<std::uint64_t> {
            if (!req.has_param("expected_revision")) return std::nullopt;
            try {
                return std::stoull(req.get_param_value("expected_revision"));
            } catch (...) {
                return std::nullopt;
            }
        };

        server.Get("/api/health", [=, this](const httplib::Request&, httplib::Response& res) { send(res, health()); });
        server.Get("/api/session", [=, this](const httplib::Request&, httplib::Response& res) { send(res, create_session()); });
        server.Post("/api/session", [=, this](const httplib::Request&, httplib::Response& res) { send(res, create_session()); });
        server.Get(R"(/api/session/([^/]+)/model)", [=, this](const httplib::Request& req, httplib::Response& res) {
            send(res, get_model(req.matches[1]));
        });
        server.Put(R"(/api/session/([^/]+)/model)", [=, this](const httplib::Request& req, httplib::Response& res) {
            send(res, put_model(req.matches[1], req.body, expected(req)));
        });
        server.Post(R"(/api/session/([^/]+)/analyze)", [=, this](const httplib::Request& req, httplib::Response& res) {
            send(res, analyze(req.matches[1]));
        });
        server.Post(R"(/api/session/([^/]+)/whatif)", [=, this](const httplib::Request& req, httplib::Response& res) {
            send(res, whatif(req.matches[1], req.body));
        });
        server.Get(R"(/api/session/([^/]+)/metrics)", [=, this](const httplib::Request& req, httplib::Response& res) {
            send(res, get_metrics(req.matches[1]));
        });
        server.Put(R"(/api/session/([^/]+)/metrics)", [=, this](const httplib::Request& req, httplib::Response& res) {
            send(res, put_metrics(req.matches[1], req.body, expected(req)));
        });
        server.Get("/api/catalog", [=, this](const httplib::Request& req, httplib::Response& res) {
            std::multimap<std::string, std::string> query(req.params.begin(), req.params.end());
            send(res, catalog(query));
        });
        if (!ui_dir.empty()) server.set_mount_point("/", ui_dir);
    }

private:
    SessionState* find(const std::string& id) {
        auto it = sessions_.find(id);
        return it == sessions_.end() ? nullptr : &it->second;
    }

    static Response unknown_session(const std::string& id) {
        return error_response(404, "UNKNOWN_SESSION", "no session '" + id + "'");
    }

    static Response revision_conflict(const SessionState& s, std::uint64_t expected) {
        auto r = error_response(409, "REVISION_CONFLICT",
                                "expected revision " + std::to_string(expected) + " but session is at " +
                                    std::to_string(s.revision));
        r.body["revision"] = s.revision;
        return r;
    }

    mutable std::mutex mutex_;
    std::map<std::string, SessionState> sessions_;
    std::uint64_t counter_ = 0;
    std::mt19937_64 rng_;
};

/// Loads a snapshot file if it exists; missing files are not an error.
inline void load_snapshot(Service& service, const std::string& path) {
    std::ifstream in(path);
    if (!in) return;
    service.restore(Json::parse(in));
}

inline void save_snapshot(const Service& service, const std::string& path) {
    std::ofstream out(path);
    out << service.snapshot().dump(2) << "\n";
}

} // namespace ahp::api
