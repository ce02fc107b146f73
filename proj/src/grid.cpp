#include "fourierhead/grid.hpp"

#include <cmath>

#include "fourierhead/errors.hpp"

namespace fourierhead {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

SampleGrid build_grid(int n, GridConvention convention) {
    if (n < 2) {
        throw ConfigError("build_grid: sample count N must be at least 2, got " +
                          std::to_string(n));
    }
    SampleGrid grid;
    grid.n = n;
    grid.convention = convention;
    grid.delta_t = 2.0 * kPi / n;
    const int points = convention == GridConvention::open ? n : n + 1;
    grid.times.reserve(points);
    for (int i = 0; i < points; ++i) {
        grid.times.push_back(-kPi + i * grid.delta_t);
    }
    return grid;
}

Tensor time_features(const SampleGrid& grid) {
    Tensor features(grid.point_count(), 2);
    for (int i = 0; i < grid.point_count(); ++i) {
        const TimeEmbedding e = embed_time(grid.times[i]);
        features.at(i, 0) = e.sin_t;
        features.at(i, 1) = e.cos_t;
    }
    return features;
}

Tensor input_matrix(const InputEncoding& input, const SampleGrid& grid) {
    const Tensor features = time_features(grid);
    const int encoding_len = input.encoded.cols;
    Tensor rows(grid.point_count(), encoding_len + 2);
    for (int i = 0; i < rows.rows; ++i) {
        for (int j = 0; j < encoding_len; ++j) {
            rows.at(i, j) = input.encoded.data[static_cast<std::size_t>(j)];
        }
        rows.at(i, encoding_len) = features.at(i, 0);
        rows.at(i, encoding_len + 1) = features.at(i, 1);
    }
    return rows;
}

ValueId sample_waveform(Tape& tape, const ModelOnTape& model, const InputEncoding& input,
                        const SampleGrid& grid) {
    ValueId inputs = tape.leaf(input_matrix(input, grid));
    return forward_model(tape, model, inputs);
}

Waveform sample_waveform(const ModelParams& params, const InputEncoding& input,
                         const SampleGrid& grid) {
    Tape tape;
    ModelOnTape staged = stage_params(tape, params);
    ValueId values = sample_waveform(tape, staged, input, grid);
    return Waveform{grid, tape.value(values).data, input.input_id};
}

} // namespace fourierhead
