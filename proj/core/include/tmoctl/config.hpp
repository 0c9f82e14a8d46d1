#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "tmoctl/plant.hpp"
#include "tmoctl/simulate.hpp"

namespace tmoctl {

/// Value of a config key: number, string, boolean, or a numeric array.
using ConfigValue = std::variant<double, std::string, bool, std::vector<double>>;
using ConfigTable = std::map<std::string, ConfigValue>;

/// Parsed TOML-style document: named [tables] and repeated [[scenario]]
/// tables. Only the subset needed here is understood (scalars, arrays of
/// numbers, strings, booleans, comments); parse errors carry line numbers.
struct ConfigDoc {
    ConfigTable root;
    std::map<std::string, ConfigTable> tables;
    std::vector<ConfigTable> scenarios;

    static ConfigDoc parse(const std::string& text);
    static ConfigDoc parse_file(const std::string& path);
};

/// Everything a CLI run needs. Scenario list falls back to the default
/// 2 x 3 x 2 matrix when the config defines none.
struct RunConfig {
    PlantParams plant = PlantParams::nominal();
    std::vector<Scenario> scenarios;
    std::uint32_t seed = 1;
    std::string out_dir = "out";

    static RunConfig from_doc(const ConfigDoc& doc);
    static RunConfig load(const std::string& path);
    static RunConfig defaults();
};

/// The documented sample configuration (plant table with the published
/// constants, a synthetic u_ss fit example, and the default scenario matrix).
std::string default_config_text();

}  // namespace tmoctl
