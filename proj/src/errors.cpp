#include "fourierhead/errors.hpp"

namespace fourierhead {

CheckpointError::CheckpointError(const std::string& message, std::size_t byte_offset)
    : std::runtime_error(message + " (byte offset " + std::to_string(byte_offset) + ")"),
      byte_offset_(byte_offset) {}

TrainingDivergedError::TrainingDivergedError(const std::string& message, int step)
    : std::runtime_error(message + " (step " + std::to_string(step) + ")"), step_(step) {}

} // namespace fourierhead
