#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bohmlab/params.hpp"

namespace bohmlab::cli {

/// A named experiment plus its parameter bundle. Every parameter has a
/// default (natural units hbar = m = 1); config files override by key.
struct Scenario {
    std::string name;
    std::filesystem::path output_dir = "out";
    std::uint64_t seed = 42;
    std::map<std::string, double> numbers;
    std::map<std::string, std::vector<double>> lists;
    std::map<std::string, std::string> strings;

    double number_or(const std::string& key, double fallback) const;
    std::vector<double> list_or(const std::string& key, std::vector<double> fallback) const;
    std::string string_or(const std::string& key, std::string fallback) const;

    /// hbar, mass and every other numeric key as an extra.
    PhysicalParams physical_params() const;

    /// Invariant checks; throws ValidationError naming the offending field.
    void validate() const;
};

std::vector<std::string> scenario_names();
std::string scenario_description(const std::string& name);

/// Scenario with defaults only.
Scenario default_scenario(const std::string& name);

/// Parse `key = value` config (numbers, strings, bracketed lists, `#`
/// comments). Throws ValidationError with file:line on parse errors.
Scenario load_config(const std::filesystem::path& path);

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ScenarioReport {
    std::vector<CheckResult> checks;
    nlohmann::json extra; // fitted accelerations, residual numbers, ...
    bool all_pass() const;
};

/// Runs the scenario and writes report.json, summary.txt and CSV outputs
/// into output_dir. Returns 0 when every check passes, 1 otherwise.
int run_scenario(const Scenario& s);

} // namespace bohmlab::cli
