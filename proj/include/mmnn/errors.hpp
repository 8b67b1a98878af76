#pragma once

#include <stdexcept>
#include <string>

namespace mmnn {

// Malformed container or model file (bad magic, bad dims, bad version).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// File ended before the declared payload was read.
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed file whose values violate a model invariant.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Training produced no usable signal (all-blank data).
struct CalibrationError : std::runtime_error {
    explicit CalibrationError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mmnn
