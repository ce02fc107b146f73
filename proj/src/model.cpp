#include "fourierhead/model.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include "fourierhead/errors.hpp"

namespace fourierhead {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

// Uniform double in [0, 1) from the top 53 bits of the generator output.
// std::uniform_real_distribution is not pinned across standard library
// implementations; this mapping is.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_layer_sizes(const std::vector<int>& sizes) {
    if (sizes.size() < 2) {
        throw ConfigError("layer_sizes: need at least 2 entries (input and output), got " +
                          std::to_string(sizes.size()));
    }
    for (int s : sizes) {
        if (s <= 0) {
            throw ConfigError("layer_sizes: every size must be positive, got " +
                              std::to_string(s));
        }
    }
    if (sizes.back() != 1) {
        throw ConfigError("layer_sizes: final fan-out must be 1 (scalar waveform value), got " +
                          std::to_string(sizes.back()));
    }
    if (sizes.front() < 2) {
        throw ConfigError("layer_sizes: first fan-in must be encoding length + 2, got " +
                          std::to_string(sizes.front()));
    }
}

} // namespace

TimeEmbedding embed_time(double t) {
    const double reduced = std::remainder(t, kTwoPi);
    return TimeEmbedding{std::sin(reduced), std::cos(reduced)};
}

InputEncoding InputEncoding::one_hot(int x, int length) {
    if (length < 1) {
        throw ConfigError("one_hot: length must be positive, got " + std::to_string(length));
    }
    if (x < 0 || x >= length) {
        throw ConfigError("one_hot: input " + std::to_string(x) + " outside [0, " +
                          std::to_string(length - 1) + "]");
    }
    Tensor encoded(1, length);
    encoded.data[static_cast<std::size_t>(x)] = 1.0;
    return InputEncoding{x, std::move(encoded)};
}

InputEncoding InputEncoding::raw(std::vector<double> values, int input_id) {
    return InputEncoding{input_id, Tensor::row_vector(std::move(values))};
}

ModelParams init_params(const std::vector<int>& layer_sizes, std::uint64_t seed) {
    check_layer_sizes(layer_sizes);
    ModelParams params;
    params.layer_sizes = layer_sizes;
    params.seed = seed;
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k + 1 < layer_sizes.size(); ++k) {
        const int fan_in = layer_sizes[k];
        const int fan_out = layer_sizes[k + 1];
        const double bound = std::sqrt(6.0 / (fan_in + fan_out));
        LayerParams layer{Tensor(fan_in, fan_out), Tensor(1, fan_out)};
        for (double& w : layer.weight.data) {
            w = (2.0 * uniform01(rng) - 1.0) * bound;
        }
        params.layers.push_back(std::move(layer));
    }
    return params;
}

ModelOnTape stage_params(Tape& tape, const ModelParams& params) {
    ModelOnTape staged;
    staged.layers.reserve(params.layers.size());
    for (const LayerParams& layer : params.layers) {
        ValueId w = tape.leaf(layer.weight);
        ValueId b = tape.leaf(layer.bias);
        staged.layers.emplace_back(w, b);
    }
    return staged;
}

Tensor input_row(const InputEncoding& input, TimeEmbedding embedding) {
    std::vector<double> row = input.encoded.data;
    row.push_back(embedding.sin_t);
    row.push_back(embedding.cos_t);
    return Tensor::row_vector(std::move(row));
}

ValueId forward_model(Tape& tape, const ModelOnTape& model, ValueId inputs) {
    if (model.layers.empty()) {
        throw ShapeError("forward_model: model has no layers");
    }
    ValueId h = inputs;
    for (std::size_t k = 0; k < model.layers.size(); ++k) {
        h = tape.matmul(h, model.layers[k].first);
        h = tape.broadcast_add_row(h, model.layers[k].second);
        if (k + 1 < model.layers.size()) {
            h = tape.tanh(h);
        }
    }
    return h;
}

double evaluate_model(const ModelParams& params, const InputEncoding& input, double t) {
    Tape tape;
    ModelOnTape staged = stage_params(tape, params);
    ValueId in = tape.leaf(input_row(input, embed_time(t)));
    ValueId out = forward_model(tape, staged, in);
    return tape.value(out).at(0, 0);
}

// ---- checkpoint serialization ----

namespace {

constexpr char kMagic[8] = {'N', 'W', 'F', 'C', 'K', 'P', 'T', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    put_u64(out, std::bit_cast<std::uint64_t>(v));
}

class StreamReader {
public:
    explicit StreamReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    std::size_t offset() const { return offset_; }
    std::size_t remaining() const { return bytes_.size() - offset_; }

    void require(std::size_t n, const char* what) const {
        if (remaining() < n) {
            throw CheckpointError(std::string("malformed checkpoint stream: truncated while reading ") +
                                      what,
                                  offset_);
        }
    }

    std::uint32_t u32(const char* what) {
        require(4, what);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[offset_ + i]) << (8 * i);
        offset_ += 4;
        return v;
    }

    std::uint64_t u64(const char* what) {
        require(8, what);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[offset_ + i]) << (8 * i);
        offset_ += 8;
        return v;
    }

    double f64(const char* what) { return std::bit_cast<double>(u64(what)); }

    void magic() {
        require(8, "magic");
        if (std::memcmp(bytes_.data(), kMagic, 8) != 0) {
            throw CheckpointError("malformed checkpoint stream: bad magic bytes", 0);
        }
        offset_ += 8;
    }

private:
    const std::vector<std::uint8_t>& bytes_;
    std::size_t offset_ = 0;
};

std::uint64_t value_count_for(const std::vector<int>& sizes) {
    std::uint64_t n = 0;
    for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
        n += static_cast<std::uint64_t>(sizes[k]) * sizes[k + 1]; // weight
        n += static_cast<std::uint64_t>(sizes[k + 1]);            // bias
    }
    return n;
}

} // namespace

std::vector<std::uint8_t> save_params(const ModelParams& params) {
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 8);
    put_u32(out, kVersion);
    put_u64(out, params.seed);
    put_u32(out, static_cast<std::uint32_t>(params.layer_sizes.size()));
    for (int s : params.layer_sizes) put_u32(out, static_cast<std::uint32_t>(s));
    put_u64(out, value_count_for(params.layer_sizes));
    for (const LayerParams& layer : params.layers) {
        for (double v : layer.weight.data) put_f64(out, v);
        for (double v : layer.bias.data) put_f64(out, v);
    }
    return out;
}

ModelParams load_params(const std::vector<std::uint8_t>& stream) {
    StreamReader r(stream);
    r.magic();
    const std::size_t version_offset = r.offset();
    const std::uint32_t version = r.u32("version");
    if (version != kVersion) {
        throw CheckpointError("malformed checkpoint stream: unsupported version " +
                                  std::to_string(version),
                              version_offset);
    }
    const std::uint64_t seed = r.u64("seed");
    const std::size_t count_offset = r.offset();
    const std::uint32_t n_sizes = r.u32("layer-size count");
    if (n_sizes < 2) {
        throw CheckpointError("malformed checkpoint stream: need at least 2 layer sizes, got " +
                                  std::to_string(n_sizes),
                              count_offset);
    }
    std::vector<int> sizes;
    sizes.reserve(n_sizes);
    for (std::uint32_t k = 0; k < n_sizes; ++k) {
        const std::size_t size_offset = r.offset();
        const std::uint32_t s = r.u32("layer size");
        if (s == 0 || s > static_cast<std::uint32_t>(1) << 24) {
            throw CheckpointError("malformed checkpoint stream: implausible layer size " +
                                      std::to_string(s),
                                  size_offset);
        }
        sizes.push_back(static_cast<int>(s));
    }
    const std::size_t declared_offset = r.offset();
    const std::uint64_t declared = r.u64("value count");
    const std::uint64_t expected = value_count_for(sizes);
    if (declared != expected) {
        throw CheckpointError("malformed checkpoint stream: declared value count " +
                                  std::to_string(declared) + " does not match layer sizes (expect " +
                                  std::to_string(expected) + ")",
                              declared_offset);
    }

    ModelParams params;
    params.layer_sizes = sizes;
    params.seed = seed;
    for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
        LayerParams layer{Tensor(sizes[k], sizes[k + 1]), Tensor(1, sizes[k + 1])};
        for (double& v : layer.weight.data) v = r.f64("weight value");
        for (double& v : layer.bias.data) v = r.f64("bias value");
        params.layers.push_back(std::move(layer));
    }
    if (r.remaining() != 0) {
        throw CheckpointError("malformed checkpoint stream: " + std::to_string(r.remaining()) +
                                  " trailing bytes",
                              r.offset());
    }
    return params;
}

void save_params_file(const ModelParams& params, const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = save_params(params);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open checkpoint file for writing: " + path.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("failed writing checkpoint file: " + path.string());
    }
}

ModelParams load_params_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open checkpoint file: " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return load_params(bytes);
}

} // namespace fourierhead
