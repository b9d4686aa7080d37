#include <catch_amalgamated.hpp>

#include <filesystem>
#include <regex>

#include "ahp/cli.hpp"
#include "support.hpp"

using namespace ahp;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

std::string scratch_file(const std::string& name, const std::string& content) {
    auto dir = fs::temp_directory_path() / "ahp-cli-tests";
    fs::create_directories(dir);
    auto path = dir / name;
    std::ofstream(path, std::ios::binary) << content;
    return path.string();
}

std::string squash(const std::string& line) {
    return std::regex_replace(line, std::regex(" +"), " ");
}

} // namespace

TEST_CASE("percent formatting") {
    CHECK(format_percent(0.662) == "66.2%");
    CHECK(format_percent(1.0) == "100.0%");
    CHECK(format_percent(-0.00001) == "0.0%");
    CHECK(format_percent(0.18355) == "18.4%");
}

TEST_CASE("table report layout") {
    auto text = render_report(evaluate(testing::example_model()), ReportFormat::Table);
    auto lines = lines_of(text);
    REQUIRE(lines.size() == 15);
    CHECK(squash(lines[0]) == " Weight OLD NEW Consistency");
    CHECK(lines[1] == "Select Between Old and New Chatbots  100.0%  66.2%  33.8%  18.4%");
    CHECK(squash(lines[14]) == " Transparent 0.4% 0.2% 0.2% 0.0%");
    CHECK(lines[2].rfind("  Accessibility", 0) == 0);
    CHECK(lines[3].rfind("    MeaningIntent", 0) == 0);
}

TEST_CASE("csv report") {
    auto lines = lines_of(render_report(evaluate(testing::example_model()), ReportFormat::Csv));
    REQUIRE(lines.size() == 15);
    CHECK(lines[0] == "path,name,depth,global_weight,global_percent,local_weight,OLD,NEW,consistency_ratio,status");
    CHECK(lines[1].rfind("Goal,Select Between Old and New Chatbots,0,1,100.0%,1,", 0) == 0);
    CHECK(lines[1].substr(lines[1].size() - 11) == ",ACCEPTABLE");
}

TEST_CASE("json report") {
    auto j = Json::parse(render_report(evaluate(testing::example_model()), ReportFormat::Json));
    CHECK(j["ranking"][0]["alternative"] == "OLD");
    CHECK(j["rows"].size() == 14);
    CHECK(j["rows"][0]["status"] == "ACCEPTABLE");
    CHECK(j["alternative_totals"]["NEW"].get<double>() == Catch::Approx(0.3376).margin(1e-4));
}

TEST_CASE("dot and ascii pictures") {
    auto m = testing::example_model();
    auto dot = render_tree(m, ReportFormat::Dot);
    CHECK(dot.rfind("digraph ahp {", 0) == 0);
    std::size_t vertices = 0, edges = 0;
    for (const auto& line : lines_of(dot)) {
        if (line.find("->") != std::string::npos) ++edges;
        else if (line.find("[label=") != std::string::npos) ++vertices;
    }
    CHECK(vertices == 16);       // 1 goal + 4 categories + 9 attributes + 2 alternatives
    CHECK(edges == 4 + 9 + 18);  // every leaf links to both alternatives

    auto ascii = lines_of(render_tree(m, ReportFormat::AsciiTree));
    CHECK(ascii[0] == "Select Between Old and New Chatbots");
    CHECK(ascii[1] == "|-- Performance");
    CHECK(ascii.back() == "        `-- NEW");
}

TEST_CASE("cli validate") {
    auto ok = run_cli({"validate", testing::example_path()});
    CHECK(ok.code == cli::kSuccess);
    CHECK(ok.out == "valid: 0 warning(s)\n");

    auto text = testing::example_text();
    const std::string judgment = "      - [Humanity, Accessibility, 1/7]\n";
    text.erase(text.find(judgment), judgment.size());
    auto invalid = run_cli({"validate", scratch_file("missing.yaml", text)});
    CHECK(invalid.code == cli::kValidationErrors);
    CHECK(invalid.err.find("MISSING_PAIR") != std::string::npos);

    auto broken = run_cli({"validate", scratch_file("broken.yaml", "Version: 2.0\nGoal:\n\tname: x\n")});
    CHECK(broken.code == cli::kParseError);
    CHECK(broken.err.find(":3:") != std::string::npos);

    CHECK(run_cli({"validate", "/nonexistent/model.yaml"}).code == cli::kUsageError);
}

TEST_CASE("cli analyze") {
    auto table = run_cli({"analyze", testing::example_path()});
    CHECK(table.code == 0);
    CHECK(lines_of(table.out).at(1) == "Select Between Old and New Chatbots  100.0%  66.2%  33.8%  18.4%");
    CHECK(table.err.find("Goal: consistency ratio 18.4%") != std::string::npos);

    CHECK(run_cli({"analyze", testing::example_path(), "--strict"}).code == 0);
    auto quiet = run_cli({"analyze", testing::example_path(), "--warn-threshold", "20"});
    CHECK(quiet.err.empty());

    auto text = testing::example_text();
    text.replace(text.find("[Humanity, Accessibility, 1/7]"), 30, "[Humanity, Accessibility, 9]");
    auto strict = run_cli({"analyze", scratch_file("inconsistent.yaml", text), "--strict"});
    CHECK(strict.code == cli::kStrictConsistencyFailure);

    auto json = run_cli({"analyze", testing::example_path(), "--format", "json"});
    CHECK(json.code == 0);
    CHECK(json.out == render_report(evaluate(testing::example_model()), ReportFormat::Json));

    auto a = run_cli({"analyze", testing::example_path(), "--format", "csv"});
    auto b = run_cli({"analyze", testing::example_path(), "--format", "csv"});
    CHECK(a.out == b.out);
}

TEST_CASE("cli visualize") {
    auto dot = run_cli({"visualize", testing::example_path(), "--format", "dot"});
    CHECK(dot.code == 0);
    CHECK(dot.out == render_tree(testing::example_model(), ReportFormat::Dot));
    CHECK(run_cli({"visualize", testing::example_path()}).out.rfind("Select Between", 0) == 0);
    CHECK(run_cli({"visualize", testing::example_path(), "--format", "svg"}).code == cli::kUsageError);
}

TEST_CASE("cli whatif") {
    auto r = run_cli({"whatif", testing::example_path(), "--node", "Goal/Performance/Escalation", "--pair", "OLD,NEW",
                      "--value", "1/7"});
    CHECK(r.code == 0);
    auto lines = lines_of(r.out);
    CHECK(lines[0] == "changed Goal/Performance/Escalation (OLD, NEW): 7 -> 1/7");
    CHECK(squash(lines[2]) == "OLD 66.2% 63.2% -3.0%");

    auto j = run_cli({"whatif", testing::example_path(), "--node", "Goal/Performance/Escalation", "--pair", "OLD,NEW",
                      "--value", "7", "--format", "json"});
    CHECK(Json::parse(j.out)["total_shift"]["OLD"] == 0.0);

    CHECK(run_cli({"whatif", testing::example_path(), "--node", "Goal/Nope", "--pair", "OLD,NEW", "--value", "3"}).code ==
          cli::kUsageError);
    CHECK(run_cli({"whatif", testing::example_path(), "--node", "Goal", "--pair", "OLD", "--value", "3"}).code ==
          cli::kUsageError);
    CHECK(run_cli({"whatif", testing::example_path(), "--node", "Goal", "--pair", "Performance,Affect", "--value", "x"})
              .code == cli::kUsageError);
}

TEST_CASE("cli init") {
    auto r = run_cli({"init", "--attribute", "Performance:Escalation", "--attribute", "Affect:Personality",
                      "--alternatives", "OLD,NEW"});
    CHECK(r.code == 0);
    auto m = parse_model(r.out);
    CHECK(m.goal.children.size() == 2);
    CHECK(r.out.find("# placeholder") != std::string::npos);

    auto path = (fs::temp_directory_path() / "ahp-cli-tests" / "init.yaml").string();
    fs::create_directories(fs::path(path).parent_path());
    auto written = run_cli({"init", "--attribute", "Accessibility:SocialCues", "--alternatives", "A,B,C", "-o", path});
    CHECK(written.code == 0);
    auto v = run_cli({"validate", path});
    CHECK(v.code == 0);
    CHECK(v.err.find("PLACEHOLDER_JUDGMENT") != std::string::npos);

    CHECK(run_cli({"init", "--attribute", "Speed:Fast", "--alternatives", "A,B"}).code == cli::kUsageError);
    CHECK(run_cli({"init", "--attribute", "Affect:X", "--alternatives", "A"}).code == cli::kUsageError);
}

TEST_CASE("cli usage and help") {
    CHECK(run_cli({}).code == cli::kUsageError);
    CHECK(run_cli({"frobnicate"}).code == cli::kUsageError);
    CHECK(run_cli({"analyze"}).code == cli::kUsageError);
    auto help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("analyze") != std::string::npos);
    for (std::string sub : {"validate", "visualize", "analyze", "whatif", "init", "serve"}) {
        INFO(sub);
        auto r = run_cli({sub, "--help"});
        CHECK(r.code == 0);
        CHECK_FALSE(r.out.empty());
    }
}
