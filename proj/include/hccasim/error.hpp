#pragma once

#include <stdexcept>
#include <string>

namespace hccasim {

/// Base class for all simulator errors.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line number of the offending row.
struct InputParseError : SimError {
    InputParseError(int line_number, const std::string& what)
        : SimError("line " + std::to_string(line_number) + ": " + what), line(line_number) {}
    int line;
};

/// Invalid scenario or simulation configuration.
struct ConfigError : SimError {
    using SimError::SimError;
};

}  // namespace hccasim
