#include <catch_amalgamated.hpp>

#include <thread>

#include "ahp/api_server.hpp"
#include "support.hpp"

using namespace ahp;
using api::Service;

namespace {

std::string new_session(Service& s) {
    auto r = s.create_session();
    REQUIRE(r.status == 200);
    return r.body["session_id"].get<std::string>();
}

std::string loaded_session(Service& s) {
    auto id = new_session(s);
    REQUIRE(s.put_model(id, testing::example_text(), std::nullopt).status == 200);
    return id;
}

Json strip_revision(Json j) {
    j.erase("revision");
    return j;
}

} // namespace

TEST_CASE("sessions start empty") {
    Service s;
    auto id = new_session(s);
    auto r = s.get_model(id);
    CHECK(r.status == 200);
    CHECK(r.body["empty"] == true);
    CHECK(r.body["revision"] == 0);
    CHECK(s.get_model("nope").status == 404);
    CHECK(s.analyze(id).status == 409);
}

TEST_CASE("model upload as text") {
    Service s;
    auto id = new_session(s);
    auto r = s.put_model(id, testing::example_text(), std::nullopt);
    CHECK(r.status == 200);
    CHECK(r.body["stored"] == true);
    CHECK(r.body["revision"] == 1);
    auto got = s.get_model(id);
    CHECK(got.body["empty"] == false);
    CHECK(parse_model(got.body["text"].get<std::string>()) == testing::example_model());
}

TEST_CASE("model upload as structured json") {
    Service s;
    auto id = new_session(s);
    Json body = to_json(testing::example_model());
    CHECK(model_from_json(body) == testing::example_model());
    auto r = s.put_model(id, body.dump(), std::nullopt);
    CHECK(r.status == 200);
    CHECK(strip_revision(s.analyze(id).body) == to_json(evaluate(testing::example_model())));
}

TEST_CASE("upload errors") {
    Service s;
    auto id = new_session(s);

    auto parse = s.put_model(id, "Version: 2.0\nGoal:\n\tname: x\n", std::nullopt);
    CHECK(parse.status == 400);
    CHECK(parse.body["error"]["code"] == "INDENTATION");
    CHECK(parse.body["error"]["span"]["line"] == 3);

    auto text = testing::example_text();
    const std::string judgment = "      - [Humanity, Accessibility, 1/7]\n";
    text.erase(text.find(judgment), judgment.size());
    auto invalid = s.put_model(id, text, std::nullopt);
    CHECK(invalid.status == 422);
    CHECK(invalid.body["stored"] == false);
    CHECK(invalid.body["report"]["errors"][0]["code"] == "MISSING_PAIR");
    CHECK(s.get_model(id).body["revision"] == 0);

    CHECK(s.put_model(id, "{not json", std::nullopt).status == 400);
    CHECK(s.put_model("nope", testing::example_text(), std::nullopt).status == 404);
}

TEST_CASE("optimistic revisions") {
    Service s;
    auto id = loaded_session(s);
    CHECK(s.put_model(id, testing::example_text(), 0).status == 409);
    CHECK(s.put_model(id, testing::example_text(), 1).status == 200);
    Json body{{"text", testing::example_text()}, {"expected_revision", 1}};
    CHECK(s.put_model(id, body.dump(), std::nullopt).status == 409);
    body["expected_revision"] = 2;
    CHECK(s.put_model(id, body.dump(), std::nullopt).status == 200);
}

TEST_CASE("analysis matches the command line output") {
    Service s;
    auto id = loaded_session(s);
    auto r = s.analyze(id);
    CHECK(r.status == 200);
    CHECK(r.body["revision"] == 1);
    auto cli_json = Json::parse(render_report(evaluate(testing::example_model()), ReportFormat::Json));
    CHECK(strip_revision(r.body) == cli_json);
}

TEST_CASE("what-if never touches the stored model") {
    Service s;
    auto id = loaded_session(s);
    auto before = s.get_model(id).body;
    Json request{{"path", "Goal/Performance/Escalation"}, {"pair", {"OLD", "NEW"}}, {"value", "1/7"}};
    for (int i = 0; i < 3; ++i) {
        auto r = s.whatif(id, request.dump());
        CHECK(r.status == 200);
        CHECK(r.body["after"]["alternative_totals"]["OLD"].get<double>() == Catch::Approx(0.633).margin(0.002));
    }
    CHECK(s.get_model(id).body == before);

    request["value"] = 7;
    CHECK(s.whatif(id, request.dump()).body["total_shift"]["OLD"] == 0.0);
}

TEST_CASE("what-if errors") {
    Service s;
    auto id = loaded_session(s);
    auto call = [&](Json body) { return s.whatif(id, body.dump()).status; };
    CHECK(call({{"path", "Goal/Nope"}, {"pair", {"OLD", "NEW"}}, {"value", 3}}) == 404);
    CHECK(call({{"path", "Goal/Performance"}, {"pair", {"OLD", "NEW"}}, {"value", 3}}) == 404);
    CHECK(call({{"path", "Goal/Performance/Escalation"}, {"pair", {"OLD", "NEW"}}, {"value", "0"}}) == 400);
    CHECK(call({{"path", "Goal/Performance/Escalation"}, {"pair", {"OLD"}}, {"value", 3}}) == 400);
    CHECK(s.whatif(id, "garbage").status == 400);
}

TEST_CASE("metrics upload") {
    Service s;
    auto id = new_session(s);
    auto csv = write_metrics_csv(example_metric_records());
    CHECK(s.put_metrics(id, csv, std::nullopt).status == 409);

    REQUIRE(s.put_model(id, testing::example_text(), std::nullopt).status == 200);
    auto r = s.put_metrics(id, csv, std::nullopt);
    CHECK(r.status == 200);
    CHECK(r.body["evidence"].size() == 9);
    CHECK(r.body["revision"] == 2);

    auto got = s.get_metrics(id);
    CHECK(got.body["metrics"].size() == 9);
    Json records = got.body["metrics"];
    CHECK(s.put_metrics(id, records.dump(), 2).status == 200);
    CHECK(s.put_metrics(id, records.dump(), 2).status == 409);

    records[0]["attribute"] = "Nope";
    CHECK(s.put_metrics(id, records.dump(), std::nullopt).status == 422);
    CHECK(s.put_metrics(id, "bad,header\n", std::nullopt).status == 400);
}

TEST_CASE("catalog route") {
    Service s;
    CHECK(s.catalog({}).body["count"] == 38);
    CHECK(s.catalog({{"category", "Performance"}}).body["count"] == 5);
    CHECK(s.catalog({{"dimension", "Satisfaction"}}).body["count"] == 17);
    CHECK(s.catalog({{"keyword", "zzz"}}).body["count"] == 0);
    CHECK(s.catalog({{"category", "Speed"}}).status == 400);
    CHECK(s.catalog({{"color", "red"}}).status == 400);
    CHECK(s.health().body["status"] == "ok");
}

TEST_CASE("snapshots restore sessions") {
    Service s;
    auto id = loaded_session(s);
    REQUIRE(s.put_metrics(id, write_metrics_csv(example_metric_records()), std::nullopt).status == 200);
    Service restored;
    restored.restore(s.snapshot());
    CHECK(restored.get_model(id).body == s.get_model(id).body);
    CHECK(restored.get_metrics(id).body == s.get_metrics(id).body);
    CHECK(new_session(restored) != id);
}

TEST_CASE("routes over HTTP") {
    Service service;
    httplib::Server server;
    service.mount(server);
    int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    auto health = client.Get("/api/health");
    REQUIRE(health);
    CHECK(health->status == 200);

    auto session = client.Get("/api/session");
    REQUIRE(session);
    auto id = Json::parse(session->body)["session_id"].get<std::string>();
    auto base = "/api/session/" + id;

    auto put = client.Put(base + "/model?expected_revision=0", testing::example_text(), "text/yaml");
    REQUIRE(put);
    CHECK(put->status == 200);
    auto stale = client.Put(base + "/model?expected_revision=0", testing::example_text(), "text/yaml");
    REQUIRE(stale);
    CHECK(stale->status == 409);

    auto analyzed = client.Post(base + "/analyze", "", "application/json");
    REQUIRE(analyzed);
    CHECK(analyzed->status == 200);
    CHECK(strip_revision(Json::parse(analyzed->body)) == to_json(evaluate(testing::example_model())));

    Json request{{"path", "Goal/Performance/Escalation"}, {"pair", {"OLD", "NEW"}}, {"value", "1/7"}};
    auto whatif = client.Post(base + "/whatif", request.dump(), "application/json");
    REQUIRE(whatif);
    CHECK(whatif->status == 200);
    CHECK(Json::parse(client.Get(base + "/model")->body)["revision"] == 1);

    auto metrics = client.Put(base + "/metrics", write_metrics_csv(example_metric_records()), "text/csv");
    REQUIRE(metrics);
    CHECK(metrics->status == 200);
    CHECK(Json::parse(client.Get(base + "/metrics")->body)["metrics"].size() == 9);

    auto catalog = client.Get("/api/catalog?category=Accessibility");
    REQUIRE(catalog);
    CHECK(Json::parse(catalog->body)["count"] == 3);
    CHECK(client.Get("/api/session/missing/model")->status == 404);

    server.stop();
    worker.join();
}
