#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fourierhead {

// Operand shapes do not conform to the requested operation. The message
// names the operation and both shapes.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A frequency request is invalid: negative, duplicated, or at/above the
// Nyquist limit N/2 of the grid it is evaluated on.
class FrequencyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configuration value violates one of its constraints. The message names
// the violated constraint.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A checkpoint stream failed to parse. Carries the byte offset at which
// parsing stopped.
class CheckpointError : public std::runtime_error {
public:
    CheckpointError(const std::string& message, std::size_t byte_offset);
    std::size_t byte_offset() const { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

// Training produced a non-finite loss. Carries the 1-based step index at
// which the loss first became non-finite.
class TrainingDivergedError : public std::runtime_error {
public:
    TrainingDivergedError(const std::string& message, int step);
    int step() const { return step_; }

private:
    int step_;
};

// A file could not be read, written, or parsed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fourierhead
