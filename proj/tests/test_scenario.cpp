#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bohmlab/errors.hpp"
#include "bohmlab/scenario.hpp"

using namespace bohmlab;
using namespace bohmlab::cli;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    auto dir = fs::temp_directory_path() / ("bohmlab_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const std::string& body) {
    auto path = dir / "scenario.conf";
    std::ofstream out(path);
    out << body;
    return path;
}

// report.json with the timestamp line removed, for byte comparisons
std::string report_without_timestamp(const fs::path& report) {
    std::ifstream in(report);
    std::ostringstream kept;
    std::string line;
    while (std::getline(in, line))
        if (line.find("\"timestamp\"") == std::string::npos) kept << line << '\n';
    return kept.str();
}

} // namespace

TEST_CASE("scenario names are stable and described") {
    auto names = scenario_names();
    REQUIRE(names.size() == 7);
    for (const auto& expected :
         {"airy-analytic", "airy-dynamic", "ho-shell", "plane-dispersion",
          "vb-zero-family", "morse-check", "custom"})
        CHECK(std::find(names.begin(), names.end(), expected) != names.end());
    for (const auto& n : names) CHECK_FALSE(scenario_description(n).empty());
}

TEST_CASE("minimal config applies natural-unit defaults") {
    auto dir = temp_dir("cfg_minimal");
    auto s = load_config(write_config(dir, "scenario = plane-dispersion\n"));
    CHECK(s.name == "plane-dispersion");
    CHECK(s.number_or("hbar", 1.0) == 1.0);
    CHECK(s.number_or("mass", 1.0) == 1.0);
    CHECK(s.seed == 42);
    auto p = s.physical_params();
    CHECK(p.hbar == 1.0);
    CHECK(p.mass == 1.0);
}

TEST_CASE("config values, lists and strings parse") {
    auto dir = temp_dir("cfg_full");
    auto s = load_config(write_config(dir,
                                      "# a comment\n"
                                      "scenario = vb-zero-family\n"
                                      "seed = 7\n"
                                      "out_dir = results\n"
                                      "beta = 2.0   # inline comment\n"
                                      "a = [1.0, 0.5, -0.25]\n"
                                      "solution = ho:2\n"));
    CHECK(s.seed == 7);
    CHECK(s.output_dir == fs::path("results"));
    CHECK(s.number_or("beta", 0.0) == 2.0);
    REQUIRE(s.list_or("a", {}).size() == 3);
    CHECK(s.list_or("a", {})[2] == -0.25);
    CHECK(s.string_or("solution", "") == "ho:2");
}

TEST_CASE("config parse errors carry line numbers") {
    auto dir = temp_dir("cfg_bad");
    try {
        load_config(write_config(dir, "scenario = custom\nsolution = airy\noops\n"));
        FAIL("expected a parse error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
    try {
        load_config(write_config(dir, "scenario = custom\nb = [1.0, oops]\n"));
        FAIL("expected a parse error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
}

TEST_CASE("invariant violations name the offending field") {
    auto dir = temp_dir("cfg_invalid");
    try {
        load_config(write_config(dir, "scenario = airy-analytic\nmass = -1.0\n"));
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("mass") != std::string::npos);
    }
    CHECK_THROWS_AS(
        load_config(write_config(dir, "scenario = airy-analytic\nbeta = 0.0\n")),
        ValidationError);
    CHECK_THROWS_AS(load_config(write_config(dir, "scenario = custom\n")),
                    ValidationError); // custom needs a solution
    CHECK_THROWS_AS(load_config(write_config(dir, "hbar = 1.0\n")), ValidationError);
}

TEST_CASE("unknown scenarios are usage errors") {
    Scenario s;
    s.name = "not-a-scenario";
    CHECK_THROWS_AS(s.validate(), UsageError);
    CHECK_THROWS_AS(default_scenario("nope"), UsageError);
}

TEST_CASE("beta override propagates to the expected acceleration") {
    // beta = 2, m = 1: a = beta^3/2m^2 = 4
    auto dir = temp_dir("beta_override");
    Scenario s = default_scenario("airy-analytic");
    s.numbers["beta"] = 2.0;
    s.output_dir = dir;
    CHECK(run_scenario(s) == 0);
    std::ifstream in(dir / "report.json");
    auto report = nlohmann::json::parse(in);
    CHECK(report["results"]["expected_acceleration"].get<double>() ==
          doctest::Approx(4.0));
    CHECK(report["results"]["fitted_acceleration"].get<double>() ==
          doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("plane-dispersion scenario runs green and writes its reports") {
    auto dir = temp_dir("plane_run");
    Scenario s = default_scenario("plane-dispersion");
    s.output_dir = dir;
    CHECK(run_scenario(s) == 0);
    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "summary.txt"));

    std::ifstream in(dir / "report.json");
    auto report = nlohmann::json::parse(in);
    CHECK(report["scenario"] == "plane-dispersion");
    CHECK(report["all_pass"] == true);
    CHECK(report["checks"].is_array());
    CHECK(report["results"]["dispersion_gap"].get<double>() ==
          doctest::Approx(-0.5)); // hbar^2 k^2/2m - hbar omega at defaults
    for (const auto& c : report["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("pass"));
        CHECK(c.contains("value"));
    }
}

TEST_CASE("precision-starved configuration fails with exit code 1") {
    // k = 1000 drives the phase magnitudes so high that the uniformity
    // check cannot reach 1e-10; the runner must report failure, not hide it.
    auto dir = temp_dir("plane_fail");
    Scenario s = default_scenario("plane-dispersion");
    s.numbers["k"] = 1000.0;
    s.output_dir = dir;
    CHECK(run_scenario(s) == 1);
    std::ifstream in(dir / "report.json");
    auto report = nlohmann::json::parse(in);
    CHECK(report["all_pass"] == false);
}

TEST_CASE("identical config and seed give byte-identical reports") {
    auto dir1 = temp_dir("det_a");
    auto dir2 = temp_dir("det_b");
    for (const auto& dir : {dir1, dir2}) {
        Scenario s = default_scenario("vb-zero-family");
        s.numbers["families"] = 4; // keep the test quick
        s.seed = 42;
        s.output_dir = dir;
        CHECK(run_scenario(s) == 0);
    }
    const auto a = report_without_timestamp(dir1 / "report.json");
    const auto b = report_without_timestamp(dir2 / "report.json");
    CHECK(a == b);
    CHECK_FALSE(a.empty());
}

TEST_CASE("custom scenario emits fields and residual reports") {
    auto dir = temp_dir("custom_run");
    Scenario s;
    s.name = "custom";
    s.strings["solution"] = "ho:2";
    s.numbers["x_min"] = -5.0;
    s.numbers["x_max"] = 5.0;
    s.numbers["n"] = 501;
    s.lists["times"] = {0.0, 0.4};
    s.output_dir = dir;
    CHECK(run_scenario(s) == 0);
    std::size_t field_csvs = 0, vb_csvs = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        auto name = e.path().filename().string();
        if (name.rfind("field_", 0) == 0) ++field_csvs;
        if (name.rfind("vb_", 0) == 0) ++vb_csvs;
    }
    CHECK(field_csvs == 2);
    CHECK(vb_csvs == 2);
    std::ifstream in(dir / "report.json");
    auto report = nlohmann::json::parse(in);
    CHECK(report["results"]["residuals"].size() == 2);
}

TEST_CASE("explicit family coefficient lists run through vb-zero-family") {
    auto dir = temp_dir("explicit_family");
    auto cfg = write_config(dir,
                            "scenario = vb-zero-family\n"
                            "families = 2\n"
                            "a = [0.0]\n"
                            "b = [1.0, 0.1]\n"   // b(t) = 1 + 0.1 t
                            "mu = [0.0, 0.5]\n");
    auto s = load_config(cfg);
    s.output_dir = dir;
    CHECK(run_scenario(s) == 0);
    std::ifstream in(dir / "report.json");
    auto report = nlohmann::json::parse(in);
    CHECK(report["results"]["families"] == 3); // explicit member + 2 random
    CHECK(report["results"]["vanishing_count"] == 3);
}

TEST_CASE("morse scenario with no bound state surfaces the error") {
    Scenario s = default_scenario("morse-check");
    s.numbers["morse_d"] = 0.3; // lambda < 1
    s.output_dir = temp_dir("morse_bad");
    CHECK_THROWS_AS(run_scenario(s), NoBoundStateError);
}

TEST_CASE("cli binary: exit codes for list, run, validate and misuse") {
    const char* bin = std::getenv("BOHM_LAB_BIN");
    if (!bin) return; // exercised through ctest, which sets the path
    auto dir = temp_dir("cli_run");
    auto run = [&](const std::string& args) {
        std::string cmd = std::string(bin) + " " + args + " > " +
                          (dir / "stdout.txt").string() + " 2>&1";
        int rc = std::system(cmd.c_str());
        return WEXITSTATUS(rc);
    };
    CHECK(run("list") == 0);
    CHECK(run("run no-such-scenario") == 2);
    CHECK(run("definitely-not-a-command") == 2);
    CHECK(run("run plane-dispersion --out " + (dir / "out").string()) == 0);
    CHECK(fs::exists(dir / "out" / "report.json"));

    auto cfg = write_config(dir, "scenario = plane-dispersion\nmass = -2\n");
    CHECK(run("validate " + cfg.string()) == 2);
    auto good = dir / "good.conf";
    std::ofstream(good) << "scenario = plane-dispersion\n";
    CHECK(run("validate " + good.string()) == 0);
}
