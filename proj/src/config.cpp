#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bohmlab/errors.hpp"
#include "bohmlab/scenario.hpp"

namespace bohmlab::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_number(const std::string& s, double& out) {
    std::size_t used = 0;
    try {
        out = std::stod(s, &used);
    } catch (const std::exception&) {
        return false;
    }
    return used == s.size();
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line,
                       const std::string& what) {
    throw ValidationError(path.string() + ":" + std::to_string(line) + ": " + what);
}

} // namespace

double Scenario::number_or(const std::string& key, double fallback) const {
    auto it = numbers.find(key);
    return it == numbers.end() ? fallback : it->second;
}

std::vector<double> Scenario::list_or(const std::string& key,
                                      std::vector<double> fallback) const {
    auto it = lists.find(key);
    return it == lists.end() ? std::move(fallback) : it->second;
}

std::string Scenario::string_or(const std::string& key, std::string fallback) const {
    auto it = strings.find(key);
    return it == strings.end() ? std::move(fallback) : it->second;
}

PhysicalParams Scenario::physical_params() const {
    PhysicalParams p;
    p.hbar = number_or("hbar", 1.0);
    p.mass = number_or("mass", 1.0);
    for (const auto& [key, value] : numbers)
        if (key != "hbar" && key != "mass") p.extras[key] = value;
    return p;
}

void Scenario::validate() const {
    const auto names = scenario_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw UsageError("unknown scenario '" + name + "'");
    if (!(number_or("hbar", 1.0) > 0.0)) throw ValidationError("hbar: must be positive");
    if (!(number_or("mass", 1.0) > 0.0)) throw ValidationError("mass: must be positive");
    if (number_or("beta", 1.0) == 0.0) throw ValidationError("beta: must be nonzero");
    if (!(number_or("omega", 1.0) > 0.0)) throw ValidationError("omega: must be positive");
    if (!(number_or("sigma", 1.0) > 0.0)) throw ValidationError("sigma: must be positive");
    if (!(number_or("dt", 1e-3) > 0.0)) throw ValidationError("dt: must be positive");
    if (number_or("n", 64.0) < 8.0) throw ValidationError("n: must be at least 8");
    if (number_or("families", 20.0) < 1.0)
        throw ValidationError("families: must be at least 1");
    if (name == "custom" && string_or("solution", "").empty())
        throw ValidationError("solution: the custom scenario needs one (e.g. ho:2)");
}

Scenario default_scenario(const std::string& name) {
    Scenario s;
    s.name = name;
    s.validate();
    return s;
}

Scenario load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");

    Scenario s;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        auto eq = line.find('=');
        if (eq == std::string::npos) fail(path, lineno, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(path, lineno, "empty key");
        if (value.empty()) fail(path, lineno, "empty value for '" + key + "'");

        if (value.front() == '[') {
            if (value.back() != ']') fail(path, lineno, "unterminated list for '" + key + "'");
            std::vector<double> items;
            std::stringstream ss(value.substr(1, value.size() - 2));
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                tok = trim(tok);
                if (tok.empty()) fail(path, lineno, "empty list element for '" + key + "'");
                double num;
                if (!parse_number(tok, num))
                    fail(path, lineno, "bad number '" + tok + "' in list '" + key + "'");
                items.push_back(num);
            }
            s.lists[key] = std::move(items);
            continue;
        }

        if (key == "scenario") {
            s.name = value;
        } else if (key == "out_dir") {
            s.output_dir = value;
        } else if (key == "seed") {
            double num;
            if (!parse_number(value, num) || num < 0.0 ||
                num != std::floor(num))
                fail(path, lineno, "seed must be a nonnegative integer");
            s.seed = static_cast<std::uint64_t>(num);
        } else {
            double num;
            if (parse_number(value, num))
                s.numbers[key] = num;
            else
                s.strings[key] = value;
        }
    }
    if (s.name.empty())
        throw ValidationError(path.string() + ": config names no scenario");
    s.validate();
    return s;
}

} // namespace bohmlab::cli
