#include "fourierhead/trainer.hpp"

#include <chrono>
#include <cmath>
#include <utility>

#include "fourierhead/errors.hpp"

namespace fourierhead {

void TrainConfig::validate() const {
    if (n_inputs < 1) {
        throw ConfigError("config: n_inputs must be at least 1, got " + std::to_string(n_inputs));
    }
    if (omega_max < 0) {
        throw ConfigError("config: omega_max must be non-negative, got " +
                          std::to_string(omega_max));
    }
    if (grid_n < 2) {
        throw ConfigError("config: grid_n must be at least 2, got " + std::to_string(grid_n));
    }
    if (2 * omega_max >= grid_n) {
        throw ConfigError("config: omega_max must be below the Nyquist limit grid_n / 2 (got "
                          "omega_max=" +
                          std::to_string(omega_max) + ", grid_n=" + std::to_string(grid_n) + ")");
    }
    if (layer_sizes.size() < 2) {
        throw ConfigError("config: layer_sizes needs at least 2 entries, got " +
                          std::to_string(layer_sizes.size()));
    }
    for (int s : layer_sizes) {
        if (s <= 0) {
            throw ConfigError("config: layer_sizes entries must be positive, got " +
                              std::to_string(s));
        }
    }
    if (layer_sizes.back() != 1) {
        throw ConfigError("config: final layer size must be 1, got " +
                          std::to_string(layer_sizes.back()));
    }
    if (layer_sizes.front() != n_inputs + 2) {
        throw ConfigError("config: first layer size must be n_inputs + 2 for the one-hot "
                          "encoding (got " +
                          std::to_string(layer_sizes.front()) + ", expected " +
                          std::to_string(n_inputs + 2) + ")");
    }
    if (!(learning_rate > 0.0)) {
        throw ConfigError("config: learning_rate must be positive");
    }
    if (!(adam_beta1 > 0.0 && adam_beta1 < 1.0)) {
        throw ConfigError("config: adam_beta1 must lie in (0, 1)");
    }
    if (!(adam_beta2 > 0.0 && adam_beta2 < 1.0)) {
        throw ConfigError("config: adam_beta2 must lie in (0, 1)");
    }
    if (!(adam_epsilon > 0.0)) {
        throw ConfigError("config: adam_epsilon must be positive");
    }
    if (steps < 1) {
        throw ConfigError("config: steps must be at least 1, got " + std::to_string(steps));
    }
}

ValueId toy_loss(Tape& tape, const std::vector<ValueId>& a_columns, const Tensor& target) {
    if (static_cast<int>(a_columns.size()) != target.rows) {
        throw ShapeError("toy_loss: " + std::to_string(a_columns.size()) +
                         " coefficient columns do not match target " + target.shape_str());
    }
    ValueId total{};
    for (std::size_t i = 0; i < a_columns.size(); ++i) {
        const Tensor& column = tape.value(a_columns[i]);
        if (column.rows != target.cols || column.cols != 1) {
            throw ShapeError("toy_loss: coefficient column " + column.shape_str() +
                             " does not match target " + target.shape_str());
        }
        std::vector<double> target_row(static_cast<std::size_t>(target.cols));
        for (int j = 0; j < target.cols; ++j) {
            target_row[static_cast<std::size_t>(j)] = target.at(static_cast<int>(i), j);
        }
        ValueId t = tape.leaf(Tensor::column_vector(std::move(target_row)));
        ValueId residual_sq = tape.square(tape.sub(a_columns[i], t));
        ValueId partial = tape.sum(residual_sq);
        total = i == 0 ? partial : tape.add(total, partial);
    }
    const double cells = static_cast<double>(target.rows) * static_cast<double>(target.cols);
    return tape.scalar_mul(total, 1.0 / cells);
}

AdamState AdamState::zeros_like(const ModelParams& params) {
    AdamState state;
    for (const LayerParams& layer : params.layers) {
        state.m.emplace_back(layer.weight.rows, layer.weight.cols);
        state.m.emplace_back(layer.bias.rows, layer.bias.cols);
        state.v.emplace_back(layer.weight.rows, layer.weight.cols);
        state.v.emplace_back(layer.bias.rows, layer.bias.cols);
    }
    return state;
}

void adam_step(ModelParams& params, const std::vector<Tensor>& grads, AdamState& state,
               int step_index, const TrainConfig& config) {
    const std::size_t n_tensors = params.layers.size() * 2;
    if (grads.size() != n_tensors || state.m.size() != n_tensors || state.v.size() != n_tensors) {
        throw ShapeError("adam_step: expected " + std::to_string(n_tensors) +
                         " gradient/moment tensors, got " + std::to_string(grads.size()));
    }
    const double b1 = config.adam_beta1;
    const double b2 = config.adam_beta2;
    const double bias1 = 1.0 - std::pow(b1, step_index);
    const double bias2 = 1.0 - std::pow(b2, step_index);
    for (std::size_t p = 0; p < n_tensors; ++p) {
        Tensor& param = p % 2 == 0 ? params.layers[p / 2].weight : params.layers[p / 2].bias;
        const Tensor& g = grads[p];
        if (!param.same_shape(g)) {
            throw ShapeError("adam_step: gradient " + g.shape_str() + " does not match parameter " +
                             param.shape_str());
        }
        Tensor& m = state.m[p];
        Tensor& v = state.v[p];
        for (std::size_t k = 0; k < param.data.size(); ++k) {
            m.data[k] = b1 * m.data[k] + (1.0 - b1) * g.data[k];
            v.data[k] = b2 * v.data[k] + (1.0 - b2) * g.data[k] * g.data[k];
            const double m_hat = m.data[k] / bias1;
            const double v_hat = v.data[k] / bias2;
            param.data[k] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.adam_epsilon);
        }
    }
}

TrainReport train(const TrainConfig& config,
                  const std::function<void(int, double)>& on_step) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    const SampleGrid grid = build_grid(config.grid_n, config.grid_convention);
    const FrequencySet freqs = FrequencySet::range(config.omega_max);
    freqs.check_against(grid);

    std::vector<InputEncoding> inputs;
    inputs.reserve(static_cast<std::size_t>(config.n_inputs));
    for (int x = 0; x < config.n_inputs; ++x) {
        inputs.push_back(InputEncoding::one_hot(x, config.n_inputs));
    }

    // Targets: a_{x,omega} = 1 when x = omega, else 0.
    Tensor target(config.n_inputs, freqs.size());
    for (int i = 0; i < config.n_inputs && i < freqs.size(); ++i) {
        target.at(i, i) = 1.0;
    }

    ModelParams params = init_params(config.layer_sizes, config.seed);
    AdamState adam = AdamState::zeros_like(params);

    TrainReport report;
    report.config = config;
    report.loss_history.reserve(static_cast<std::size_t>(config.steps));

    for (int step = 1; step <= config.steps; ++step) {
        Tape tape;
        ModelOnTape staged = stage_params(tape, params);

        std::vector<ValueId> a_columns;
        a_columns.reserve(inputs.size());
        for (const InputEncoding& input : inputs) {
            ValueId waveform = sample_waveform(tape, staged, input, grid);
            a_columns.push_back(
                coefficient_column(tape, waveform, grid, freqs, TrigKind::cosine));
        }
        ValueId loss = toy_loss(tape, a_columns, target);
        const double loss_value = tape.value(loss).at(0, 0);
        if (!std::isfinite(loss_value)) {
            throw TrainingDivergedError("training diverged: loss is not finite", step);
        }
        report.loss_history.push_back(loss_value);
        if (on_step) on_step(step, loss_value);

        const std::vector<Tensor> grads = tape.backward(loss);
        std::vector<Tensor> param_grads;
        param_grads.reserve(staged.layers.size() * 2);
        for (const auto& [w, b] : staged.layers) {
            param_grads.push_back(grads[w.index]);
            param_grads.push_back(grads[b.index]);
        }
        adam_step(params, param_grads, adam, step, config);
    }

    auto [a, b] = coefficient_matrices(params, inputs, grid, freqs);
    report.a = std::move(a);
    report.b = std::move(b);
    report.params = std::move(params);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace fourierhead
