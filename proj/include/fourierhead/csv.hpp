#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fourierhead/grid.hpp"
#include "fourierhead/tensor.hpp"

namespace fourierhead {

// Decimal formatting with 17 significant digits; parse(format(v)) == v for
// every finite double.
std::string format_double(double v);
double parse_double(const std::string& text);

// loss.csv: header "step,loss", steps numbered from 1.
void write_loss_csv(const std::filesystem::path& path, const std::vector<double>& losses);
std::vector<double> read_loss_csv(const std::filesystem::path& path);

// waveform CSV: header "t,value", one row per grid point.
void write_waveform_csv(const std::filesystem::path& path, const Waveform& waveform);

struct WaveformSeries {
    std::vector<double> t;
    std::vector<double> value;
};
WaveformSeries read_waveform_csv(const std::filesystem::path& path);

// coefficients CSV: header "x,omega,a,b", one row per (input, frequency).
struct CoefficientTable {
    std::vector<int> inputs; // row labels of a and b
    std::vector<int> omegas; // column labels
    Tensor a;
    Tensor b;
};

void write_coefficients_csv(const std::filesystem::path& path, const std::vector<int>& inputs,
                            const std::vector<int>& omegas, const Tensor& a, const Tensor& b);
CoefficientTable read_coefficients_csv(const std::filesystem::path& path);

} // namespace fourierhead
