#pragma once

#include <stdexcept>
#include <string>

namespace fbq {

/// Invalid configuration: bad grid sizes, out-of-range parameters,
/// malformed config text. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Corrupt or incompatible on-disk data (bad magic, truncated snapshot,
/// header mismatch). Maps to CLI exit code 2.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fbq
