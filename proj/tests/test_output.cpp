#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oamswipt/output.hpp"

using namespace oamswipt;
namespace fs = std::filesystem;

namespace {

ScenarioConfig small(const std::string& scenario) {
    ScenarioConfig c;
    apply_setting(c, "scenario", scenario);
    c.samples = 512;
    c.grid_size = 2;
    c.workers = 1;
    c.seed = 3;
    return c;
}

std::size_t lines(const std::string& s) {
    std::size_t n = 0;
    for (char ch : s) n += ch == '\n';
    return n;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream b;
    b << in.rdbuf();
    return b.str();
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("oamswipt_" + name);
    fs::remove_all(p);
    return p;
}

} // namespace

TEST_CASE("curves csv shape") {
    auto c = small("custom");
    c.baselines = {"siso"};
    const auto b = run_scenario(c);
    const auto csv = curves_csv(b);
    CHECK(csv.rfind("baseline,method,param_name,param_value,energy_w_per_hz,max_rate_bps_per_hz\n", 0) == 0);
    CHECK(lines(csv) == 1 + 2);
}

TEST_CASE("fig2 cardinality: three cov ratios, four baselines, oracle") {
    auto c = small("fig2");
    const auto b = run_scenario(c);
    // 4 Monte Carlo curves + 1 oracle per cov ratio
    CHECK(b.curves.size() == 3 * 5);
    CHECK(lines(curves_csv(b)) == 1 + 15 * 2);
}

TEST_CASE("json round trip") {
    auto c = small("fig3");
    c.baselines = {"oam", "mimo-zf"};
    const auto b = run_scenario(c);
    const auto j = bundle_to_json(b);
    CHECK(j.contains("summary"));
    const auto back = bundle_from_json(nlohmann::ordered_json::parse(j.dump()));
    CHECK(back == b);
}

TEST_CASE("field bundle outputs") {
    auto c = small("field");
    c.field_resolution = 17;
    c.field_modes = {0, 1};
    const auto b = run_scenario(c);
    REQUIRE(b.fields.size() == 2);
    CHECK(lines(field_csv(b)) == 1 + 2 * 17 * 17);
    CHECK(lines(field_summary_csv(b)) == 3);
    const auto back = bundle_from_json(bundle_to_json(b));
    CHECK(back == b);
    CHECK(bundle_svg(b).find("<svg") != std::string::npos);
}

TEST_CASE("emit writes requested formats atomically") {
    auto c = small("custom");
    c.baselines = {"oam"};
    const auto b = run_scenario(c);
    const auto dir = scratch("emit");
    const auto written = emit_results(b, {"csv", "svg"}, dir);
    CHECK(written.size() == 2);
    CHECK(fs::exists(dir / "custom.csv"));
    CHECK(fs::exists(dir / "custom.svg"));
    CHECK_FALSE(fs::exists(dir / "custom.json"));
    for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");
    const auto svg = slurp(dir / "custom.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("oam") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("write_file_atomic replaces content and reports failures") {
    const auto dir = scratch("atomic");
    fs::create_directories(dir);
    write_file_atomic(dir / "a.txt", "first");
    write_file_atomic(dir / "a.txt", "second");
    CHECK(slurp(dir / "a.txt") == "second");
    CHECK_THROWS_AS(write_file_atomic(dir / "a.txt" / "x.txt", "x"), IoError); // parent is a file
    // a regular file where a directory is expected
    CHECK_THROWS_AS(emit_results(run_scenario(small("custom")), {"csv"}, dir / "a.txt"), IoError);
    fs::remove_all(dir);
}
