#include <doctest.h>

#include <cmath>

#include "fourierhead/errors.hpp"
#include "fourierhead/grid.hpp"
#include "fourierhead/parallel.hpp"
#include "oracles.hpp"

using namespace fourierhead;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("build_grid: N = 4 gives the four quarter points") {
    const SampleGrid grid = build_grid(4);
    REQUIRE(grid.point_count() == 4);
    CHECK(grid.times[0] == -kPi);
    CHECK(grid.times[1] == -kPi / 2);
    CHECK(grid.times[2] == 0.0);
    CHECK(grid.times[3] == kPi / 2);
}

TEST_CASE("build_grid: N = 256") {
    const SampleGrid grid = build_grid(256);
    CHECK(grid.point_count() == 256);
    CHECK(grid.delta_t == 2.0 * kPi / 256);
}

TEST_CASE("build_grid: rejects N < 2") {
    CHECK_THROWS_AS(build_grid(1), ConfigError);
    CHECK_THROWS_AS(build_grid(0), ConfigError);
    CHECK_THROWS_AS(build_grid(-4), ConfigError);
}

TEST_CASE("build_grid: uniform spacing and endpoints for many N") {
    for (int n : {2, 3, 16, 255, 256, 1024}) {
        CAPTURE(n);
        const SampleGrid grid = build_grid(n);
        REQUIRE(grid.point_count() == n);
        CHECK(grid.times[0] == -kPi);
        CHECK(std::abs(grid.times[static_cast<std::size_t>(n - 1)] - (kPi - grid.delta_t)) <
              2e-15);
        for (int i = 1; i < n; ++i) {
            CHECK(std::abs((grid.times[static_cast<std::size_t>(i)] -
                            grid.times[static_cast<std::size_t>(i - 1)]) -
                           grid.delta_t) <= 1e-15);
        }
    }
}

TEST_CASE("build_grid: paper convention duplicates the endpoint") {
    const SampleGrid grid = build_grid(256, GridConvention::paper);
    CHECK(grid.n == 256);
    CHECK(grid.point_count() == 257);
    CHECK(grid.times[0] == -kPi);
    CHECK(std::abs(grid.times[256] - kPi) < 2e-15);
    CHECK(grid.delta_t == 2.0 * kPi / 256);
}

TEST_CASE("sample_waveform: zero params give the zero waveform") {
    ModelParams params = init_params({6, 8, 1}, 2);
    for (LayerParams& layer : params.layers) {
        for (double& v : layer.weight.data) v = 0.0;
    }
    const Waveform w = sample_waveform(params, InputEncoding::one_hot(1, 4), build_grid(16));
    REQUIRE(w.values.size() == 16);
    for (double v : w.values) CHECK(v == 0.0);
    CHECK(w.input_id == 1);
}

TEST_CASE("sample_waveform: rigged single layer copies the sin feature") {
    // One linear layer over (encoding, sin t, cos t) with weight column
    // (0, 1, 0): the network output is exactly the sin feature.
    ModelParams params;
    params.layer_sizes = {3, 1};
    params.layers.push_back(LayerParams{Tensor(3, 1, {0.0, 1.0, 0.0}), Tensor(1, 1, {0.0})});

    const SampleGrid grid = build_grid(64);
    const Waveform w =
        sample_waveform(params, InputEncoding::raw({0.5}), grid);
    REQUIRE(w.values.size() == 64);
    for (int n = 0; n < 64; ++n) {
        const double t = grid.times[static_cast<std::size_t>(n)];
        CHECK(w.values[static_cast<std::size_t>(n)] ==
              std::sin(std::remainder(t, 2.0 * kPi)));
        CHECK(w.values[static_cast<std::size_t>(n)] ==
              doctest::Approx(std::sin(t)).epsilon(1e-15));
    }
}

TEST_CASE("sample_waveform: deterministic across calls") {
    const ModelParams params = init_params({6, 16, 1}, 77);
    const SampleGrid grid = build_grid(128);
    const Waveform a = sample_waveform(params, InputEncoding::one_hot(2, 4), grid);
    const Waveform b = sample_waveform(params, InputEncoding::one_hot(2, 4), grid);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        CHECK(a.values[i] == b.values[i]);
    }
}

TEST_CASE("sample_waveform: parallel evaluation on independent tapes matches sequential") {
    const ModelParams params = init_params({18, 16, 1}, 55);
    const SampleGrid grid = build_grid(64);

    std::vector<Waveform> sequential;
    for (int x = 0; x < 16; ++x) {
        sequential.push_back(sample_waveform(params, InputEncoding::one_hot(x, 16), grid));
    }

    std::vector<Waveform> parallel(16);
    parallel_for(16, 4, [&](int x) {
        parallel[static_cast<std::size_t>(x)] =
            sample_waveform(params, InputEncoding::one_hot(x, 16), grid);
    });

    for (int x = 0; x < 16; ++x) {
        REQUIRE(parallel[static_cast<std::size_t>(x)].values.size() == 64);
        for (std::size_t i = 0; i < 64; ++i) {
            CHECK(parallel[static_cast<std::size_t>(x)].values[i] ==
                  sequential[static_cast<std::size_t>(x)].values[i]);
        }
    }
}

TEST_CASE("sample_waveform: grids N and 2N agree at shared points") {
    const ModelParams params = init_params({6, 16, 1}, 13);
    const InputEncoding input = InputEncoding::one_hot(3, 4);
    const SampleGrid coarse = build_grid(128);
    const SampleGrid fine = build_grid(256);

    const Waveform wc = sample_waveform(params, input, coarse);
    const Waveform wf = sample_waveform(params, input, fine);
    for (int i = 0; i < coarse.point_count(); ++i) {
        REQUIRE(coarse.times[static_cast<std::size_t>(i)] ==
                fine.times[static_cast<std::size_t>(2 * i)]);
        CHECK(std::abs(wc.values[static_cast<std::size_t>(i)] -
                       wf.values[static_cast<std::size_t>(2 * i)]) < 1e-12);
    }
}
