#include "fourierhead/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "fourierhead/config_file.hpp"
#include "fourierhead/csv.hpp"
#include "fourierhead/errors.hpp"

namespace fourierhead {

namespace {

using nlohmann::json;

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string now_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json config_to_json(const TrainConfig& config) {
    json j;
    j["n_inputs"] = config.n_inputs;
    j["omega_max"] = config.omega_max;
    j["grid_n"] = config.grid_n;
    j["layer_sizes"] = config.layer_sizes;
    j["learning_rate"] = config.learning_rate;
    j["adam_beta1"] = config.adam_beta1;
    j["adam_beta2"] = config.adam_beta2;
    j["adam_epsilon"] = config.adam_epsilon;
    j["steps"] = config.steps;
    j["seed"] = config.seed;
    j["grid_convention"] = grid_convention_name(config.grid_convention);
    return j;
}

TrainConfig config_from_json(const json& j) {
    TrainConfig config;
    config.n_inputs = j.at("n_inputs").get<int>();
    config.omega_max = j.at("omega_max").get<int>();
    config.grid_n = j.at("grid_n").get<int>();
    config.layer_sizes = j.at("layer_sizes").get<std::vector<int>>();
    config.learning_rate = j.at("learning_rate").get<double>();
    config.adam_beta1 = j.at("adam_beta1").get<double>();
    config.adam_beta2 = j.at("adam_beta2").get<double>();
    config.adam_epsilon = j.at("adam_epsilon").get<double>();
    config.steps = j.at("steps").get<int>();
    config.seed = j.at("seed").get<std::uint64_t>();
    config.grid_convention = parse_grid_convention(j.at("grid_convention").get<std::string>());
    return config;
}

json manifest_to_json(const RunManifest& manifest) {
    json j;
    j["created_utc"] = manifest.created_utc;
    j["updated_utc"] = manifest.updated_utc;
    if (manifest.config) {
        j["config"] = config_to_json(*manifest.config);
    }
    j["files"] = json::array();
    for (const ManifestEntry& e : manifest.files) {
        j["files"].push_back({{"name", e.name}, {"bytes", e.bytes}, {"fnv1a64", e.fnv1a64_hex}});
    }
    return j;
}

} // namespace

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("missing file: " + path.string());
    }
    std::uint64_t hash = 0xcbf29ce484222325ull;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ull;
        }
        if (got < static_cast<std::streamsize>(sizeof buf)) break;
    }
    return hash;
}

ManifestEntry checksum_entry(const std::filesystem::path& dir, const std::string& name) {
    const std::filesystem::path path = dir / name;
    ManifestEntry entry;
    entry.name = name;
    entry.bytes = static_cast<std::uint64_t>(std::filesystem::file_size(path));
    entry.fnv1a64_hex = hex64(fnv1a64_file(path));
    return entry;
}

RunManifest read_manifest(const std::filesystem::path& dir) {
    const std::filesystem::path path = dir / kManifestFileName;
    std::ifstream in(path);
    if (!in) {
        throw IoError("missing file: " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(path.string() + ": invalid manifest JSON: " + e.what());
    }
    RunManifest manifest;
    try {
        manifest.created_utc = j.value("created_utc", "");
        manifest.updated_utc = j.value("updated_utc", "");
        if (j.contains("config")) {
            manifest.config = config_from_json(j.at("config"));
        }
        for (const json& f : j.at("files")) {
            manifest.files.push_back(ManifestEntry{f.at("name").get<std::string>(),
                                                   f.at("bytes").get<std::uint64_t>(),
                                                   f.at("fnv1a64").get<std::string>()});
        }
    } catch (const json::exception& e) {
        throw IoError(path.string() + ": invalid manifest JSON: " + e.what());
    }
    return manifest;
}

void update_manifest(const std::filesystem::path& dir, const std::vector<std::string>& file_names,
                     const std::optional<TrainConfig>& config) {
    RunManifest manifest;
    if (std::filesystem::exists(dir / kManifestFileName)) {
        manifest = read_manifest(dir);
    } else {
        manifest.created_utc = now_utc();
    }
    if (config) {
        manifest.config = config;
    }
    manifest.updated_utc = now_utc();
    for (const std::string& name : file_names) {
        const ManifestEntry entry = checksum_entry(dir, name);
        bool replaced = false;
        for (ManifestEntry& existing : manifest.files) {
            if (existing.name == name) {
                existing = entry;
                replaced = true;
                break;
            }
        }
        if (!replaced) manifest.files.push_back(entry);
    }

    std::ofstream out(dir / kManifestFileName, std::ios::trunc);
    if (!out) {
        throw IoError("cannot open file for writing: " + (dir / kManifestFileName).string());
    }
    out << manifest_to_json(manifest).dump(2) << '\n';
    if (!out) throw IoError("failed writing " + (dir / kManifestFileName).string());
}

bool verify_manifest(const std::filesystem::path& dir, std::string* error) {
    const RunManifest manifest = read_manifest(dir);
    for (const ManifestEntry& entry : manifest.files) {
        const std::filesystem::path path = dir / entry.name;
        if (!std::filesystem::exists(path)) {
            if (error) *error = "missing file: " + path.string();
            return false;
        }
        const ManifestEntry fresh = checksum_entry(dir, entry.name);
        if (fresh.bytes != entry.bytes || fresh.fnv1a64_hex != entry.fnv1a64_hex) {
            if (error) *error = "checksum mismatch for " + path.string();
            return false;
        }
    }
    return true;
}

} // namespace fourierhead
