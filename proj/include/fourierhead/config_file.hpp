#pragma once

#include <filesystem>
#include <string>

#include "fourierhead/trainer.hpp"

namespace fourierhead {

// Flat "key = value" config format with exactly the TrainConfig fields.
// Blank lines and lines starting with '#' are ignored; unknown keys are an
// error. Layer sizes are a comma list; grid_convention is "open" or "paper".
TrainConfig parse_config(const std::string& text, const std::string& source_name,
                         TrainConfig base = TrainConfig{});
TrainConfig read_config_file(const std::filesystem::path& path,
                             TrainConfig base = TrainConfig{});

std::string config_to_string(const TrainConfig& config);
void write_config_file(const std::filesystem::path& path, const TrainConfig& config);

const char* grid_convention_name(GridConvention convention);
GridConvention parse_grid_convention(const std::string& name);

} // namespace fourierhead
