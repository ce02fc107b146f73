#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fourierhead/trainer.hpp"

namespace fourierhead {

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

// manifest.json in a run directory: the config used, timestamps, and a file
// list with sizes and FNV-1a 64 checksums (hex).
struct ManifestEntry {
    std::string name;
    std::uint64_t bytes = 0;
    std::string fnv1a64_hex;
};

struct RunManifest {
    std::optional<TrainConfig> config;
    std::string created_utc;
    std::string updated_utc;
    std::vector<ManifestEntry> files;
};

constexpr const char* kManifestFileName = "manifest.json";

ManifestEntry checksum_entry(const std::filesystem::path& dir, const std::string& name);

// Creates or updates manifest.json in `dir`, replacing entries of the named
// files and keeping the rest. `config` is written on creation when provided.
void update_manifest(const std::filesystem::path& dir, const std::vector<std::string>& file_names,
                     const std::optional<TrainConfig>& config = std::nullopt);

RunManifest read_manifest(const std::filesystem::path& dir);

// Re-checksums every listed file. Returns true when all match; otherwise
// fills `error` with the first mismatch.
bool verify_manifest(const std::filesystem::path& dir, std::string* error = nullptr);

} // namespace fourierhead
