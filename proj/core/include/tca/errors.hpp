#pragma once

#include <stdexcept>
#include <string>

namespace tca {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text (JSON syntax, bad constants, bad comparators).
struct ParseError : Error {
    using Error::Error;
};

/// Structurally invalid model or misuse of a model-level operation
/// (unknown clocks, reserved names, broken preconditions).
struct ModelError : Error {
    using Error::Error;
};

}  // namespace tca
