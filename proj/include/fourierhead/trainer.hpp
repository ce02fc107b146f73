#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fourierhead/fourier.hpp"
#include "fourierhead/grid.hpp"
#include "fourierhead/model.hpp"
#include "fourierhead/tape.hpp"
#include "fourierhead/tensor.hpp"

namespace fourierhead {

// Experiment hyperparameters. Defaults reproduce the toy identity task:
// inputs and frequencies both range over 0..15, and the cosine-coefficient
// matrix is driven to the 16x16 identity.
struct TrainConfig {
    int n_inputs = 16;
    int omega_max = 15;
    int grid_n = 256;
    std::vector<int> layer_sizes = {18, 128, 128, 1}; // 18 = 16 one-hot + sin t + cos t
    double learning_rate = 1e-3;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_epsilon = 1e-8;
    int steps = 5000;
    std::uint64_t seed = 42;
    GridConvention grid_convention = GridConvention::open;

    void validate() const; // throws ConfigError naming the violated constraint
};

struct TrainReport {
    std::vector<double> loss_history; // one entry per step, pre-update
    Tensor a;                         // final coefficient matrices
    Tensor b;
    double wall_seconds = 0.0;
    TrainConfig config;
    ModelParams params;
};

// Mean squared error of the on-tape cosine-coefficient matrix against a
// target matrix. `a_columns[i]` is the F x 1 coefficient column of input i
// and target row i holds its targets. Sine coefficients are unconstrained.
// Accumulation over inputs is left-to-right by input index.
ValueId toy_loss(Tape& tape, const std::vector<ValueId>& a_columns, const Tensor& target);

// First and second Adam moments, one pair per parameter tensor in layer
// order: weight 0, bias 0, weight 1, bias 1, ...
struct AdamState {
    std::vector<Tensor> m;
    std::vector<Tensor> v;

    static AdamState zeros_like(const ModelParams& params);
};

// One Adam update with bias correction. `grads` is aligned with the
// flattened parameter list; `step_index` is 1-based.
void adam_step(ModelParams& params, const std::vector<Tensor>& grads, AdamState& state,
               int step_index, const TrainConfig& config);

// Full-batch training of the toy identity task: every step evaluates all
// inputs and all frequencies. Deterministic for a fixed config. Throws
// TrainingDivergedError if the loss turns non-finite. `on_step` is invoked
// after each step with (step, loss); it must not mutate anything the run
// depends on.
TrainReport train(const TrainConfig& config,
                  const std::function<void(int, double)>& on_step = {});

} // namespace fourierhead
