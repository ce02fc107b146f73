#pragma once

#include <vector>

#include "fourierhead/model.hpp"
#include "fourierhead/tape.hpp"
#include "fourierhead/tensor.hpp"

namespace fourierhead {

// Sampling convention for the uniform grid over [-pi, pi].
//
//   open:  N points t_n = -pi + n * dt for n = 0..N-1. The right endpoint is
//          omitted; under periodicity t = -pi and t = +pi are the same point,
//          and this choice makes discrete trigonometric orthogonality exact.
//   paper: N+1 points, n = 0..N, so t = +pi appears a second time while the
//          per-sample quadrature weight stays 2/N. Supported for comparison;
//          it biases cosine sums by O(1/N).
enum class GridConvention { open, paper };

// Uniform discretization of [-pi, pi] with time step dt = 2*pi / N.
struct SampleGrid {
    int n = 0; // the N in dt = 2*pi / N
    GridConvention convention = GridConvention::open;
    double delta_t = 0.0;
    std::vector<double> times;

    int point_count() const { return static_cast<int>(times.size()); }
};

SampleGrid build_grid(int n, GridConvention convention = GridConvention::open);

// A materialized neural waveform: one value per grid point.
struct Waveform {
    SampleGrid grid;
    std::vector<double> values;
    int input_id = -1;
};

// Rows (sin t_n, cos t_n) for every grid point, P x 2.
Tensor time_features(const SampleGrid& grid);

// The network input matrix for one encoding: row n is (encoding, sin t_n,
// cos t_n), P x (E + 2).
Tensor input_matrix(const InputEncoding& input, const SampleGrid& grid);

// Waveform values on tape as a [P x 1] column, differentiable w.r.t. the
// staged parameters.
ValueId sample_waveform(Tape& tape, const ModelOnTape& model, const InputEncoding& input,
                        const SampleGrid& grid);

// Convenience without gradient bookkeeping exposed to the caller.
Waveform sample_waveform(const ModelParams& params, const InputEncoding& input,
                         const SampleGrid& grid);

} // namespace fourierhead
