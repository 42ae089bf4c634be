#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ddna {

// Invalid parameters or configuration (bad window size, bad generator config, ...).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed or inconsistent input data. `line` is 1-based; 0 means the error
// is not bound to a specific input line.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg),
          line_number(line) {}

    std::size_t line_number;
};

}  // namespace ddna
