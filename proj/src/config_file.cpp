#include "fourierhead/config_file.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fourierhead/csv.hpp"
#include "fourierhead/errors.hpp"

namespace fourierhead {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& source, std::size_t line, const std::string& key,
                            const std::string& why) {
    throw ConfigError(source + ":" + std::to_string(line) + ": key '" + key + "': " + why);
}

long to_long(const std::string& source, std::size_t line, const std::string& key,
             const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (errno != 0 || end == text.c_str() || *end != '\0') {
        bad_value(source, line, key, "expected an integer, got '" + text + "'");
    }
    return v;
}

double to_double(const std::string& source, std::size_t line, const std::string& key,
                 const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
        bad_value(source, line, key, "expected a number, got '" + text + "'");
    }
    return v;
}

std::vector<int> to_int_list(const std::string& source, std::size_t line, const std::string& key,
                             const std::string& text) {
    std::vector<int> values;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        values.push_back(static_cast<int>(to_long(source, line, key, trim(item))));
    }
    if (values.empty()) {
        bad_value(source, line, key, "expected a comma list of integers, got '" + text + "'");
    }
    return values;
}

} // namespace

const char* grid_convention_name(GridConvention convention) {
    return convention == GridConvention::open ? "open" : "paper";
}

GridConvention parse_grid_convention(const std::string& name) {
    if (name == "open") return GridConvention::open;
    if (name == "paper") return GridConvention::paper;
    throw ConfigError("grid_convention must be 'open' or 'paper', got '" + name + "'");
}

TrainConfig parse_config(const std::string& text, const std::string& source_name,
                         TrainConfig base) {
    TrainConfig config = base;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(source_name + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        if (key == "n_inputs") {
            config.n_inputs = static_cast<int>(to_long(source_name, line_no, key, value));
        } else if (key == "omega_max") {
            config.omega_max = static_cast<int>(to_long(source_name, line_no, key, value));
        } else if (key == "grid_n") {
            config.grid_n = static_cast<int>(to_long(source_name, line_no, key, value));
        } else if (key == "layer_sizes") {
            config.layer_sizes = to_int_list(source_name, line_no, key, value);
        } else if (key == "learning_rate") {
            config.learning_rate = to_double(source_name, line_no, key, value);
        } else if (key == "adam_beta1") {
            config.adam_beta1 = to_double(source_name, line_no, key, value);
        } else if (key == "adam_beta2") {
            config.adam_beta2 = to_double(source_name, line_no, key, value);
        } else if (key == "adam_epsilon") {
            config.adam_epsilon = to_double(source_name, line_no, key, value);
        } else if (key == "steps") {
            config.steps = static_cast<int>(to_long(source_name, line_no, key, value));
        } else if (key == "seed") {
            const long seed = to_long(source_name, line_no, key, value);
            if (seed < 0) bad_value(source_name, line_no, key, "seed must be non-negative");
            config.seed = static_cast<std::uint64_t>(seed);
        } else if (key == "grid_convention") {
            config.grid_convention = parse_grid_convention(value);
        } else {
            throw ConfigError(source_name + ":" + std::to_string(line_no) +
                              ": unknown config key '" + key + "'");
        }
    }
    return config;
}

TrainConfig read_config_file(const std::filesystem::path& path, TrainConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("missing file: " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.string(), base);
}

std::string config_to_string(const TrainConfig& config) {
    std::ostringstream out;
    out << "n_inputs = " << config.n_inputs << '\n';
    out << "omega_max = " << config.omega_max << '\n';
    out << "grid_n = " << config.grid_n << '\n';
    out << "layer_sizes = ";
    for (std::size_t i = 0; i < config.layer_sizes.size(); ++i) {
        if (i > 0) out << ',';
        out << config.layer_sizes[i];
    }
    out << '\n';
    out << "learning_rate = " << format_double(config.learning_rate) << '\n';
    out << "adam_beta1 = " << format_double(config.adam_beta1) << '\n';
    out << "adam_beta2 = " << format_double(config.adam_beta2) << '\n';
    out << "adam_epsilon = " << format_double(config.adam_epsilon) << '\n';
    out << "steps = " << config.steps << '\n';
    out << "seed = " << config.seed << '\n';
    out << "grid_convention = " << grid_convention_name(config.grid_convention) << '\n';
    return out.str();
}

void write_config_file(const std::filesystem::path& path, const TrainConfig& config) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot open file for writing: " + path.string());
    }
    out << config_to_string(config);
    if (!out) throw IoError("failed writing " + path.string());
}

} // namespace fourierhead
