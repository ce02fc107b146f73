#include "fourierhead/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "fourierhead/errors.hpp"

namespace fourierhead {

FrequencySet::FrequencySet(std::vector<int> omegas) : omegas_(std::move(omegas)) {
    std::unordered_set<int> seen;
    for (int w : omegas_) {
        if (w < 0) {
            throw FrequencyError("frequency set: omega must be non-negative, got " +
                                 std::to_string(w));
        }
        if (!seen.insert(w).second) {
            throw FrequencyError("frequency set: duplicate omega " + std::to_string(w));
        }
    }
}

FrequencySet FrequencySet::range(int omega_max) {
    if (omega_max < 0) {
        throw FrequencyError("frequency set: omega_max must be non-negative, got " +
                             std::to_string(omega_max));
    }
    std::vector<int> omegas(static_cast<std::size_t>(omega_max) + 1);
    for (int w = 0; w <= omega_max; ++w) omegas[static_cast<std::size_t>(w)] = w;
    return FrequencySet(std::move(omegas));
}

void FrequencySet::check_against(const SampleGrid& grid) const {
    for (int w : omegas_) {
        if (2 * w >= grid.n) {
            throw FrequencyError("frequency omega=" + std::to_string(w) +
                                 " aliases on an N=" + std::to_string(grid.n) +
                                 " grid (requires omega < N/2)");
        }
    }
}

Tensor quadrature_rows(const SampleGrid& grid, const FrequencySet& freqs, TrigKind kind) {
    freqs.check_against(grid);
    const double weight = 2.0 / grid.n;
    Tensor rows(freqs.size(), grid.point_count());
    for (int j = 0; j < freqs.size(); ++j) {
        const double omega = freqs.omegas()[static_cast<std::size_t>(j)];
        for (int i = 0; i < grid.point_count(); ++i) {
            const double arg = omega * grid.times[static_cast<std::size_t>(i)];
            rows.at(j, i) = weight * (kind == TrigKind::cosine ? std::cos(arg) : std::sin(arg));
        }
    }
    return rows;
}

ValueId coefficient_column(Tape& tape, ValueId waveform, const SampleGrid& grid,
                           const FrequencySet& freqs, TrigKind kind) {
    const Tensor& values = tape.value(waveform);
    if (values.cols != 1 || values.rows != grid.point_count()) {
        throw ShapeError("coefficient_column: waveform must be " +
                         std::to_string(grid.point_count()) + "x1 for this grid, got " +
                         values.shape_str());
    }
    ValueId rows = tape.leaf(quadrature_rows(grid, freqs, kind));
    return tape.matmul(rows, waveform);
}

ValueId cosine_coefficient(Tape& tape, ValueId waveform, const SampleGrid& grid, int omega) {
    return coefficient_column(tape, waveform, grid, FrequencySet({omega}), TrigKind::cosine);
}

ValueId sine_coefficient(Tape& tape, ValueId waveform, const SampleGrid& grid, int omega) {
    return coefficient_column(tape, waveform, grid, FrequencySet({omega}), TrigKind::sine);
}

namespace {

double plain_coefficient(const Waveform& waveform, int omega, TrigKind kind) {
    Tape tape;
    ValueId values = tape.leaf(Tensor::column_vector(waveform.values));
    ValueId c = coefficient_column(tape, values, waveform.grid, FrequencySet({omega}), kind);
    return tape.value(c).at(0, 0);
}

} // namespace

double cosine_coefficient(const Waveform& waveform, int omega) {
    return plain_coefficient(waveform, omega, TrigKind::cosine);
}

double sine_coefficient(const Waveform& waveform, int omega) {
    return plain_coefficient(waveform, omega, TrigKind::sine);
}

CoefficientSet coefficients_for_input(const ModelParams& params, const InputEncoding& input,
                                      const SampleGrid& grid, const FrequencySet& freqs) {
    Tape tape;
    ModelOnTape staged = stage_params(tape, params);
    ValueId waveform = sample_waveform(tape, staged, input, grid);
    ValueId a = coefficient_column(tape, waveform, grid, freqs, TrigKind::cosine);
    ValueId b = coefficient_column(tape, waveform, grid, freqs, TrigKind::sine);
    return CoefficientSet{input.input_id, freqs.omegas(), tape.value(a).data, tape.value(b).data};
}

CoefficientMatrices coefficient_matrices(Tape& tape, const ModelOnTape& model,
                                         const std::vector<InputEncoding>& inputs,
                                         const SampleGrid& grid, const FrequencySet& freqs) {
    freqs.check_against(grid);
    CoefficientMatrices out;
    const int n_inputs = static_cast<int>(inputs.size());
    out.a = Tensor(n_inputs, freqs.size());
    out.b = Tensor(n_inputs, freqs.size());
    out.a_columns.reserve(inputs.size());
    out.b_columns.reserve(inputs.size());
    for (int i = 0; i < n_inputs; ++i) {
        ValueId waveform = sample_waveform(tape, model, inputs[static_cast<std::size_t>(i)], grid);
        ValueId a_col = coefficient_column(tape, waveform, grid, freqs, TrigKind::cosine);
        ValueId b_col = coefficient_column(tape, waveform, grid, freqs, TrigKind::sine);
        out.a_columns.push_back(a_col);
        out.b_columns.push_back(b_col);
        for (int j = 0; j < freqs.size(); ++j) {
            out.a.at(i, j) = tape.value(a_col).at(j, 0);
            out.b.at(i, j) = tape.value(b_col).at(j, 0);
        }
    }
    return out;
}

std::pair<Tensor, Tensor> coefficient_matrices(const ModelParams& params,
                                               const std::vector<InputEncoding>& inputs,
                                               const SampleGrid& grid,
                                               const FrequencySet& freqs) {
    Tape tape;
    ModelOnTape staged = stage_params(tape, params);
    CoefficientMatrices m = coefficient_matrices(tape, staged, inputs, grid, freqs);
    return {std::move(m.a), std::move(m.b)};
}

} // namespace fourierhead
