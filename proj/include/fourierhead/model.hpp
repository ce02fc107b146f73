#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "fourierhead/tape.hpp"
#include "fourierhead/tensor.hpp"

namespace fourierhead {

// Periodic time features (sin t, cos t). `t` enters only through its exact
// reduction modulo 2*pi, so embeddings of t and t + 2*pi*k coincide bit for
// bit whenever the shifted argument is representable.
struct TimeEmbedding {
    double sin_t = 0.0;
    double cos_t = 0.0;
};

TimeEmbedding embed_time(double t);

// An input to the waveform network: an id (the toy integer x, or -1 for raw
// vectors) plus its encoded form, a 1 x E row.
struct InputEncoding {
    int input_id = -1;
    Tensor encoded;

    static InputEncoding one_hot(int x, int length);
    static InputEncoding raw(std::vector<double> values, int input_id = -1);
};

struct LayerParams {
    Tensor weight; // fan_in x fan_out
    Tensor bias;   // 1 x fan_out
};

// All learned weights of the waveform network, with init provenance. Hidden
// layers use tanh, the output layer is linear with fan-out 1. The first
// fan-in is encoding length + 2; the final two input columns carry the
// (sin t, cos t) pair.
struct ModelParams {
    std::vector<LayerParams> layers;
    std::vector<int> layer_sizes;
    std::uint64_t seed = 0;

    int input_dim() const { return layer_sizes.front(); }
    int encoding_dim() const { return layer_sizes.front() - 2; }
};

// Xavier-uniform weights (bound sqrt(6 / (fan_in + fan_out))), zero biases.
// Deterministic in `seed` across platforms.
ModelParams init_params(const std::vector<int>& layer_sizes, std::uint64_t seed);

// Parameter leaves staged on a tape, one (weight, bias) pair per layer.
struct ModelOnTape {
    std::vector<std::pair<ValueId, ValueId>> layers;
};

ModelOnTape stage_params(Tape& tape, const ModelParams& params);

// One network input row: (encoding, sin t, cos t).
Tensor input_row(const InputEncoding& input, TimeEmbedding embedding);

// Forward pass over a batch of input rows; returns the [batch x 1] output
// column, differentiable w.r.t. the staged parameters.
ValueId forward_model(Tape& tape, const ModelOnTape& model, ValueId inputs);

// Scalar convenience: S(theta; x, t) without keeping a tape.
double evaluate_model(const ModelParams& params, const InputEncoding& input, double t);

// Checkpoint serialization. The byte format is fixed and bit-exact:
//
//   offset  size  field
//   0       8     magic "NWFCKPT1"
//   8       4     format version (u32 LE) = 1
//   12      8     init seed (u64 LE)
//   20      4     layer-size count L (u32 LE)
//   24      4*L   layer sizes (u32 LE each)
//   ...     8     declared value count (u64 LE); must equal the count
//                 implied by the layer sizes
//   ...     8*n   values (f64 LE): per layer, weight row-major, then bias
//
// No trailing bytes are permitted.
std::vector<std::uint8_t> save_params(const ModelParams& params);
ModelParams load_params(const std::vector<std::uint8_t>& stream);

void save_params_file(const ModelParams& params, const std::filesystem::path& path);
ModelParams load_params_file(const std::filesystem::path& path);

} // namespace fourierhead
