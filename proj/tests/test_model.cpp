#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace ahp;

namespace {

DecisionModel two_category_model() {
    DecisionModel m;
    m.alternatives = {{"OLD", {}}, {"NEW", {}}};
    m.goal.name = "Goal";
    Node perf{"Performance", "", {{"OLD", "NEW", Ratio(3)}}, {}, true};
    Node hum{"Humanity", "", {{"OLD", "NEW", Ratio(1, 5)}}, {}, true};
    m.goal.children = {perf, hum};
    m.goal.judgments = {{"Performance", "Humanity", Ratio(7)}};
    return m;
}

bool has(const std::vector<Diagnostic>& list, ErrorCode code, const std::string& path = {}) {
    for (const auto& d : list) {
        if (d.code == code && (path.empty() || d.path == path)) return true;
    }
    return false;
}

} // namespace

TEST_CASE("the example model is valid with no warnings") {
    auto report = validate_model(testing::example_model());
    CHECK(report.ok());
    CHECK(report.warnings.empty());
}

TEST_CASE("a missing leaf judgment is reported at its node") {
    auto m = two_category_model();
    m.goal.children[1].judgments.clear();
    auto report = validate_model(m);
    CHECK_FALSE(report.ok());
    CHECK(has(report.errors, ErrorCode::MissingPair, "Goal/Humanity"));
}

TEST_CASE("conflicting and duplicate judgments") {
    auto m = two_category_model();
    m.goal.judgments.push_back({"Humanity", "Performance", Ratio(1, 5)});
    CHECK(has(validate_model(m).errors, ErrorCode::ConflictingPair, "Goal"));

    m = two_category_model();
    m.goal.judgments.push_back({"Humanity", "Performance", Ratio(1, 7)});
    CHECK(has(validate_model(m).errors, ErrorCode::DuplicatePair, "Goal"));
}

TEST_CASE("judgment value checks") {
    auto m = two_category_model();
    m.goal.judgments[0].value = Ratio(11);
    auto report = validate_model(m);
    CHECK(report.ok());
    CHECK(has(report.warnings, ErrorCode::ValueOutOfScale, "Goal"));

    m.goal.judgments[0].value = Ratio(4);
    report = validate_model(m);
    CHECK(report.ok());
    CHECK(has(report.warnings, ErrorCode::OffScaleValue));
    CHECK_FALSE(has(report.warnings, ErrorCode::ValueOutOfScale));

    m.goal.judgments[0].value = Ratio(0);
    CHECK(has(validate_model(m).errors, ErrorCode::NonPositiveValue));
}

TEST_CASE("names in judgments must be siblings and distinct") {
    auto m = two_category_model();
    m.goal.judgments.push_back({"Performance", "Affect", Ratio(3)});
    CHECK(has(validate_model(m).errors, ErrorCode::UnknownName, "Goal"));

    m = two_category_model();
    m.goal.children[0].judgments.push_back({"OLD", "OLD", Ratio(1)});
    CHECK(has(validate_model(m).errors, ErrorCode::SelfPair, "Goal/Performance"));
}

TEST_CASE("structural checks") {
    auto m = two_category_model();
    m.alternatives.pop_back();
    CHECK(has(validate_model(m).errors, ErrorCode::TooFewAlternatives));

    m = two_category_model();
    m.alternatives.push_back({"OLD", {}});
    CHECK(has(validate_model(m).errors, ErrorCode::DuplicateAlternative));

    m = two_category_model();
    m.goal.children.push_back(m.goal.children[0]);
    CHECK(has(validate_model(m).errors, ErrorCode::DuplicateChild, "Goal"));

    m = two_category_model();
    m.goal.children[0].compares_alternatives = false;
    CHECK(has(validate_model(m).errors, ErrorCode::EmptyChildren, "Goal/Performance"));

    m = two_category_model();
    m.version = "1.0";
    CHECK(has(validate_model(m).errors, ErrorCode::BadVersion));
}

TEST_CASE("placeholder judgments produce a warning, not an error") {
    auto m = two_category_model();
    m.goal.judgments[0].placeholder = true;
    auto report = validate_model(m);
    CHECK(report.ok());
    CHECK(has(report.warnings, ErrorCode::PlaceholderJudgment, "Goal"));
}

TEST_CASE("node lookup by path") {
    auto m = testing::example_model();
    CHECK(node_at(m, split_path("Goal/Performance/Escalation")).name == "Escalation");
    CHECK(node_at(m, split_path("Goal")).name == "Select Between Old and New Chatbots");
    CHECK(node_at(m, {"Select Between Old and New Chatbots", "Affect"}).name == "Affect");
    CHECK_THROWS_MATCHES(node_at(m, split_path("Goal/Nope")), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == ErrorCode::UnknownPath; }));
    CHECK_THROWS_AS(node_at(m, split_path("Other/Affect")), Error);
}

TEST_CASE("path helpers") {
    CHECK(join_path({"Goal", "A", "B"}) == "Goal/A/B");
    CHECK(split_path("Goal/A/B") == NodePath{"Goal", "A", "B"});
}

TEST_CASE("require_valid throws the first error") {
    auto m = two_category_model();
    m.goal.children[1].judgments.clear();
    try {
        require_valid(m);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidModel);
    }
}
