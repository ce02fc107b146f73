#pragma once

#include <vector>

#include "fourierhead/grid.hpp"
#include "fourierhead/model.hpp"
#include "fourierhead/tape.hpp"
#include "fourierhead/tensor.hpp"

namespace fourierhead {

// Distinct non-negative integer angular frequencies. A set is only usable
// with a grid whose Nyquist limit exceeds every entry (omega < N/2).
class FrequencySet {
public:
    explicit FrequencySet(std::vector<int> omegas);
    static FrequencySet range(int omega_max); // 0, 1, ..., omega_max

    const std::vector<int>& omegas() const { return omegas_; }
    int size() const { return static_cast<int>(omegas_.size()); }

    void check_against(const SampleGrid& grid) const;

private:
    std::vector<int> omegas_;
};

enum class TrigKind { cosine, sine };

// Quadrature matrix, F x P: entry (j, n) = (2/N) * trig(omega_j * t_n).
// A coefficient column is this matrix applied to the waveform values; the
// integral defining each coefficient is its mean value times its width, so
// every sample carries the uniform weight 2/N.
Tensor quadrature_rows(const SampleGrid& grid, const FrequencySet& freqs, TrigKind kind);

// Coefficients of a waveform recorded on a tape ([P x 1] values). Linear and
// differentiable in the waveform values: d a / d v_n = (2/N) trig(omega t_n).
ValueId cosine_coefficient(Tape& tape, ValueId waveform, const SampleGrid& grid, int omega);
ValueId sine_coefficient(Tape& tape, ValueId waveform, const SampleGrid& grid, int omega);
ValueId coefficient_column(Tape& tape, ValueId waveform, const SampleGrid& grid,
                           const FrequencySet& freqs, TrigKind kind);

// Plain-value path for materialized waveforms.
double cosine_coefficient(const Waveform& waveform, int omega);
double sine_coefficient(const Waveform& waveform, int omega);

// Coefficients of one input at a list of frequencies.
struct CoefficientSet {
    int input_id = -1;
    std::vector<int> omegas;
    std::vector<double> a;
    std::vector<double> b;
};

CoefficientSet coefficients_for_input(const ModelParams& params, const InputEncoding& input,
                                      const SampleGrid& grid, const FrequencySet& freqs);

// Coefficient matrices over a list of inputs: a(i, j) = a_{x_i, omega_j}.
// The per-input columns stay on the tape so a training loss can flow
// gradients back into the parameters.
struct CoefficientMatrices {
    Tensor a; // n_inputs x F
    Tensor b;
    std::vector<ValueId> a_columns; // per input, F x 1
    std::vector<ValueId> b_columns;
};

CoefficientMatrices coefficient_matrices(Tape& tape, const ModelOnTape& model,
                                         const std::vector<InputEncoding>& inputs,
                                         const SampleGrid& grid, const FrequencySet& freqs);

// Value-only convenience used after training.
std::pair<Tensor, Tensor> coefficient_matrices(const ModelParams& params,
                                               const std::vector<InputEncoding>& inputs,
                                               const SampleGrid& grid,
                                               const FrequencySet& freqs);

} // namespace fourierhead
