#include <catch_amalgamated.hpp>

#include <algorithm>

#include "support.hpp"

using namespace ahp;

namespace {

bool contains(const std::vector<AttributeCatalogEntry>& entries, std::string_view text) {
    return std::any_of(entries.begin(), entries.end(), [&](const auto& e) { return e.attribute == text; });
}

const std::vector<AttributeSelection> kExampleHierarchy{
    {Category::Performance, "UnexpectedInput"}, {Category::Performance, "Escalation"},
    {Category::Humanity, "Transparent"},        {Category::Humanity, "ThemedDiscussion"},
    {Category::Humanity, "SpecificQs"},         {Category::Affect, "Personality"},
    {Category::Affect, "Entertaining"},         {Category::Accessibility, "MeaningIntent"},
    {Category::Accessibility, "SocialCues"}};

ErrorCode scaffold_error(const std::vector<AttributeSelection>& selection, const std::vector<std::string>& alternatives) {
    try {
        scaffold_model(selection, alternatives);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidModel;
}

} // namespace

TEST_CASE("catalog filters") {
    auto all = catalog_entries();
    CHECK(all.size() == 38);

    auto performance = catalog_entries({.category = Category::Performance});
    CHECK(performance.size() == 5);
    CHECK(contains(performance, "Robustness to unexpected input"));
    for (const auto& e : performance) CHECK(e.usability_dimension == UsabilityDimension::Efficiency);

    auto satisfaction = catalog_entries({.dimension = UsabilityDimension::Satisfaction});
    std::vector<Category> cats;
    for (const auto& e : satisfaction) {
        if (std::find(cats.begin(), cats.end(), e.category) == cats.end()) cats.push_back(e.category);
    }
    CHECK(cats == std::vector<Category>{Category::Affect, Category::EthicsBehavior, Category::Accessibility});

    CHECK(catalog_entries({.keyword = "zzz"}).empty());
    CHECK(catalog_entries({.keyword = "TURING"}).size() == 2);

    auto accessibility = catalog_entries({.category = Category::Accessibility});
    CHECK(accessibility.size() == 3);
    CHECK(contains(accessibility, "Meets neurodiverse needs such as extra response time and text interface"));
}

TEST_CASE("category names parse loosely") {
    CHECK(parse_category("Performance") == Category::Performance);
    CHECK(parse_category("ethics & behavior") == Category::EthicsBehavior);
    CHECK(parse_category("EthicsBehavior") == Category::EthicsBehavior);
    CHECK_FALSE(parse_category("Speed"));
    CHECK(display_name(Category::EthicsBehavior) == "Ethics & Behavior");
    CHECK(parse_dimension("satisfaction") == UsabilityDimension::Satisfaction);
}

TEST_CASE("scaffolding the example hierarchy") {
    auto m = scaffold_model(kExampleHierarchy, {"OLD", "NEW"});
    REQUIRE(m.goal.children.size() == 4);
    std::vector<std::size_t> sizes;
    for (const auto& c : m.goal.children) sizes.push_back(c.children.size());
    CHECK(sizes == std::vector<std::size_t>{2, 3, 2, 2});
    CHECK(m.goal.judgments.size() == 6);
    for (const auto& j : m.goal.judgments) {
        CHECK(j.placeholder);
        CHECK(j.value == Ratio(1));
    }
    auto report = validate_model(m);
    CHECK(report.ok());
    CHECK(report.has_warning(ErrorCode::PlaceholderJudgment));
}

TEST_CASE("scaffolding errors") {
    CHECK(scaffold_error({}, {"OLD", "NEW"}) == ErrorCode::EmptySelection);
    CHECK(scaffold_error(kExampleHierarchy, {"OLD"}) == ErrorCode::TooFewAlternatives);
    CHECK(scaffold_error(kExampleHierarchy, {"OLD", "OLD"}) == ErrorCode::DuplicateAlternative);
    CHECK(scaffold_error(kExampleHierarchy, {"OLD", ""}) == ErrorCode::EmptyName);
    CHECK(scaffold_error({{Category::Affect, "X"}, {Category::Affect, "X"}}, {"A", "B"}) == ErrorCode::DuplicateChild);
}

TEST_CASE("example metrics attach to the example hierarchy") {
    auto m = scaffold_model(kExampleHierarchy, {"OLD", "NEW"});
    auto annotated = attach_metrics(m, example_metric_records());
    CHECK(annotated.evidence.size() == 9);
    CHECK(annotated.model == m);
    CHECK(annotated.evidence[0].leaf == NodePath{"Goal", "Performance", "UnexpectedInput"});
}

TEST_CASE("metrics attach by path and reject unknowns") {
    auto m = testing::example_model();
    MetricRecord r{"Goal/Affect/Personality", "score", MetricKind::ScaledScore, {{"OLD", ScoredValue{50, 5}}}};
    CHECK(attach_metrics(m, {r}).evidence.at(0).leaf.back() == "Personality");

    r.attribute = "Nope";
    CHECK_THROWS_MATCHES(attach_metrics(m, {r}), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == ErrorCode::UnknownAttribute;
                         }));
    r.attribute = "Personality";
    r.values = {{"MID", ScoredValue{50, 5}}};
    CHECK_THROWS_MATCHES(attach_metrics(m, {r}), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == ErrorCode::UnknownAlternative;
                         }));
}

TEST_CASE("metric values are range checked") {
    CHECK_THROWS_AS(check_metric({"X", "", MetricKind::SuccessRate, {{"A", 1.5}}}), Error);
    CHECK_THROWS_AS(check_metric({"X", "", MetricKind::RangeRate, {{"A", RateRange{0.9, 0.8}}}}), Error);
    CHECK_THROWS_AS(check_metric({"X", "", MetricKind::ScaledScore, {{"A", ScoredValue{120, 1}}}}), Error);
    CHECK_THROWS_AS(check_metric({"X", "", MetricKind::SuccessRate, {{"A", RateRange{0.1, 0.2}}}}), Error);
    CHECK_NOTHROW(check_metric({"X", "", MetricKind::ScaledScore, {{"A", ScoredValue{72, 8}}}}));
}

TEST_CASE("metric file round trip") {
    auto records = example_metric_records();
    auto text = write_metrics_csv(records);
    CHECK(text.rfind(std::string(kMetricCsvHeader), 0) == 0);
    CHECK(read_metrics_csv(text) == records);
    CHECK(write_metrics_csv(read_metrics_csv(text)) == text);
}

TEST_CASE("metric file errors") {
    CHECK_THROWS_AS(read_metrics_csv("wrong,header\n"), Error);
    std::string bad = std::string(kMetricCsvHeader) + "\nEscalation,x,SUCCESS_RATE,OLD,abc,,,,\n";
    CHECK_THROWS_AS(read_metrics_csv(bad), Error);
}
