#pragma once

#include <string>
#include <vector>

#include "fbq/experiments.hpp"

namespace fbq {

/// A run configuration is a fully resolved ScenarioConfig; the config text
/// format is one `key = value` per line with `#` comments and defaults for
/// every key.
using RunConfig = ScenarioConfig;

/// All recognized keys with default value and documentation line.
struct ConfigKey {
    const char* key;
    const char* default_value;
    const char* doc;
};
const std::vector<ConfigKey>& config_keys();

/// Parses config text, applies defaults, builds the grid, forcing and
/// profiles, and revalidates every invariant (parameter ranges, the
/// regularity orders s1/s2, ladders). Unknown keys, malformed values and
/// invariant violations throw ConfigError naming the offending line.
RunConfig parse_config(const std::string& text);

/// parse_config over the contents of a file.
RunConfig parse_config_file(const std::string& path);

/// The defaults, equivalent to parse_config("").
RunConfig default_config();

/// Warnings produced while resolving the last parse (nonzero forcing mean
/// projected out, exponents outside the subcritical range when allowed).
/// Stored on the config itself.
struct ResolvedConfig {
    RunConfig config;
    std::vector<std::string> warnings;
};
ResolvedConfig parse_config_verbose(const std::string& text);

} // namespace fbq
