#include "fourierhead/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fourierhead/errors.hpp"

namespace fourierhead {

namespace {

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("missing file: " + path.string());
    }
    return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot open file for writing: " + path.string());
    }
    return out;
}

[[noreturn]] void bad_row(const std::filesystem::path& path, std::size_t line,
                          const std::string& why) {
    throw IoError(path.string() + ":" + std::to_string(line) + ": " + why);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

long parse_long(const std::filesystem::path& path, std::size_t line, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (errno != 0 || end == text.c_str() || *end != '\0') {
        bad_row(path, line, "expected an integer, got '" + text + "'");
    }
    return v;
}

double parse_field_double(const std::filesystem::path& path, std::size_t line,
                          const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
        bad_row(path, line, "expected a number, got '" + text + "'");
    }
    return v;
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
        throw IoError("expected a number, got '" + text + "'");
    }
    return v;
}

void write_loss_csv(const std::filesystem::path& path, const std::vector<double>& losses) {
    std::ofstream out = open_for_write(path);
    out << "step,loss\n";
    for (std::size_t i = 0; i < losses.size(); ++i) {
        out << (i + 1) << ',' << format_double(losses[i]) << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
}

std::vector<double> read_loss_csv(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    std::string line;
    if (!std::getline(in, line) || line != "step,loss") {
        throw IoError(path.string() + ": expected header 'step,loss'");
    }
    std::vector<double> losses;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 2) bad_row(path, line_no, "expected 2 fields");
        const long step = parse_long(path, line_no, fields[0]);
        if (step != static_cast<long>(losses.size()) + 1) {
            bad_row(path, line_no, "steps must count up from 1");
        }
        losses.push_back(parse_field_double(path, line_no, fields[1]));
    }
    return losses;
}

void write_waveform_csv(const std::filesystem::path& path, const Waveform& waveform) {
    std::ofstream out = open_for_write(path);
    out << "t,value\n";
    for (std::size_t i = 0; i < waveform.values.size(); ++i) {
        out << format_double(waveform.grid.times[i]) << ',' << format_double(waveform.values[i])
            << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
}

WaveformSeries read_waveform_csv(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    std::string line;
    if (!std::getline(in, line) || line != "t,value") {
        throw IoError(path.string() + ": expected header 't,value'");
    }
    WaveformSeries series;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 2) bad_row(path, line_no, "expected 2 fields");
        series.t.push_back(parse_field_double(path, line_no, fields[0]));
        series.value.push_back(parse_field_double(path, line_no, fields[1]));
    }
    return series;
}

void write_coefficients_csv(const std::filesystem::path& path, const std::vector<int>& inputs,
                            const std::vector<int>& omegas, const Tensor& a, const Tensor& b) {
    if (a.rows != static_cast<int>(inputs.size()) || a.cols != static_cast<int>(omegas.size()) ||
        !a.same_shape(b)) {
        throw ShapeError("coefficients CSV: label counts do not match matrices " + a.shape_str() +
                         " / " + b.shape_str());
    }
    std::ofstream out = open_for_write(path);
    out << "x,omega,a,b\n";
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) {
            out << inputs[static_cast<std::size_t>(i)] << ',' << omegas[static_cast<std::size_t>(j)]
                << ',' << format_double(a.at(i, j)) << ',' << format_double(b.at(i, j)) << '\n';
        }
    }
    if (!out) throw IoError("failed writing " + path.string());
}

CoefficientTable read_coefficients_csv(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    std::string line;
    if (!std::getline(in, line) || line != "x,omega,a,b") {
        throw IoError(path.string() + ": expected header 'x,omega,a,b'");
    }
    struct Row {
        int x;
        int omega;
        double a;
        double b;
    };
    std::vector<Row> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 4) bad_row(path, line_no, "expected 4 fields");
        rows.push_back(Row{static_cast<int>(parse_long(path, line_no, fields[0])),
                           static_cast<int>(parse_long(path, line_no, fields[1])),
                           parse_field_double(path, line_no, fields[2]),
                           parse_field_double(path, line_no, fields[3])});
    }

    CoefficientTable table;
    for (const Row& row : rows) {
        if (table.inputs.empty() || table.inputs.back() != row.x) {
            table.inputs.push_back(row.x);
        }
    }
    if (!rows.empty()) {
        const std::size_t per_input = rows.size() / table.inputs.size();
        for (std::size_t j = 0; j < per_input; ++j) {
            table.omegas.push_back(rows[j].omega);
        }
    }
    const int n = static_cast<int>(table.inputs.size());
    const int f = static_cast<int>(table.omegas.size());
    if (static_cast<std::size_t>(n) * static_cast<std::size_t>(f) != rows.size()) {
        throw IoError(path.string() + ": rows do not form a full (x, omega) table");
    }
    table.a = Tensor(n, f);
    table.b = Tensor(n, f);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const int i = static_cast<int>(k) / f;
        const int j = static_cast<int>(k) % f;
        if (rows[k].x != table.inputs[static_cast<std::size_t>(i)] ||
            rows[k].omega != table.omegas[static_cast<std::size_t>(j)]) {
            throw IoError(path.string() + ": rows are not grouped by x with a fixed omega order");
        }
        table.a.at(i, j) = rows[k].a;
        table.b.at(i, j) = rows[k].b;
    }
    return table;
}

} // namespace fourierhead
