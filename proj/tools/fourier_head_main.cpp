#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fourierhead/config_file.hpp"
#include "fourierhead/csv.hpp"
#include "fourierhead/errors.hpp"
#include "fourierhead/fourier.hpp"
#include "fourierhead/manifest.hpp"
#include "fourierhead/parallel.hpp"
#include "fourierhead/svg.hpp"
#include "fourierhead/trainer.hpp"

namespace fs = std::filesystem;
using namespace fourierhead;

namespace {

std::string waveform_csv_name(int x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "waveform_%02d.csv", x);
    return buf;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
    std::vector<int> values;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            values.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError(flag + ": expected a comma list of integers, got '" + text + "'");
        }
    }
    if (values.empty()) {
        throw ConfigError(flag + ": expected a comma list of integers, got '" + text + "'");
    }
    return values;
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + path.string());
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

struct TrainArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> steps;
    std::optional<int> grid_n;
    std::optional<std::string> grid_convention;
    bool quiet = false;
};

int run_train(const TrainArgs& args) {
    TrainConfig config;
    if (!args.config_path.empty()) {
        config = read_config_file(args.config_path);
    }
    if (args.seed) config.seed = *args.seed;
    if (args.steps) config.steps = *args.steps;
    if (args.grid_n) config.grid_n = *args.grid_n;
    if (args.grid_convention) config.grid_convention = parse_grid_convention(*args.grid_convention);
    config.validate();

    const fs::path out_dir(args.out_dir);
    fs::create_directories(out_dir);

    const int report_every = std::max(1, config.steps / 10);
    TrainReport report = train(config, [&](int step, double loss) {
        if (!args.quiet && (step % report_every == 0 || step == config.steps)) {
            std::fprintf(stderr, "step %6d / %d   loss %.6e\n", step, config.steps, loss);
        }
    });

    save_params_file(report.params, out_dir / "checkpoint.bin");
    write_loss_csv(out_dir / "loss.csv", report.loss_history);

    std::vector<int> input_labels(static_cast<std::size_t>(config.n_inputs));
    for (int x = 0; x < config.n_inputs; ++x) input_labels[static_cast<std::size_t>(x)] = x;
    write_coefficients_csv(out_dir / "coefficients.csv", input_labels,
                           FrequencySet::range(config.omega_max).omegas(), report.a, report.b);

    const SampleGrid grid = build_grid(config.grid_n, config.grid_convention);
    std::vector<std::string> files = {"checkpoint.bin", "loss.csv", "coefficients.csv",
                                      "config.txt"};
    for (int x = 0; x < config.n_inputs; ++x) {
        const Waveform waveform =
            sample_waveform(report.params, InputEncoding::one_hot(x, config.n_inputs), grid);
        write_waveform_csv(out_dir / waveform_csv_name(x), waveform);
        files.push_back(waveform_csv_name(x));
    }
    write_config_file(out_dir / "config.txt", config);
    update_manifest(out_dir, files, config);

    std::cout << "final loss " << format_double(report.loss_history.back()) << " after "
              << config.steps << " steps (" << std::fixed << std::setprecision(1)
              << report.wall_seconds << " s); artifacts in " << out_dir.string() << "\n";
    return 0;
}

struct EvalArgs {
    std::string checkpoint;
    int x = 0;
    std::string omegas;
    int grid_n = 256;
    std::string grid_convention = "open";
    std::string out_csv;
};

int run_eval(const EvalArgs& args) {
    const ModelParams params = load_params_file(args.checkpoint);
    const SampleGrid grid = build_grid(args.grid_n, parse_grid_convention(args.grid_convention));
    const FrequencySet freqs(parse_int_list(args.omegas, "--omegas"));
    freqs.check_against(grid);
    const InputEncoding input = InputEncoding::one_hot(args.x, params.encoding_dim());
    const CoefficientSet coeffs = coefficients_for_input(params, input, grid, freqs);

    std::cout << "omega,a,b\n";
    for (std::size_t j = 0; j < coeffs.omegas.size(); ++j) {
        std::cout << coeffs.omegas[j] << ',' << format_double(coeffs.a[j]) << ','
                  << format_double(coeffs.b[j]) << '\n';
    }
    if (!args.out_csv.empty()) {
        std::ostringstream text;
        text << "omega,a,b\n";
        for (std::size_t j = 0; j < coeffs.omegas.size(); ++j) {
            text << coeffs.omegas[j] << ',' << format_double(coeffs.a[j]) << ','
                 << format_double(coeffs.b[j]) << '\n';
        }
        write_text_file(args.out_csv, text.str());
    }
    return 0;
}

int run_plot(const std::string& run_dir_arg) {
    const fs::path run_dir(run_dir_arg);

    const std::vector<double> losses = read_loss_csv(run_dir / "loss.csv");
    std::vector<double> steps(losses.size());
    for (std::size_t i = 0; i < losses.size(); ++i) steps[i] = static_cast<double>(i + 1);
    ChartOptions loss_options;
    loss_options.title = "Training loss";
    loss_options.x_label = "step";
    loss_options.y_label = "mean squared error";
    loss_options.log_y = true;
    write_text_file(run_dir / "loss.svg",
                    line_chart_svg({LineSeries{"", steps, losses}}, loss_options));

    const CoefficientTable table = read_coefficients_csv(run_dir / "coefficients.csv");
    ChartOptions heat_options;
    heat_options.title = "Cosine coefficients a(x, omega)";
    heat_options.x_label = "omega";
    heat_options.y_label = "input x";
    write_text_file(run_dir / "coefficients.svg", heatmap_svg(table.a, heat_options));

    auto waveform_chart = [&](int lo, int hi, const fs::path& out_path) {
        std::vector<LineSeries> series;
        for (int x = lo; x <= hi; ++x) {
            const WaveformSeries w = read_waveform_csv(run_dir / waveform_csv_name(x));
            series.push_back(LineSeries{"x = " + std::to_string(x), w.t, w.value});
        }
        ChartOptions options;
        options.title =
            "Neural waveforms, x in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
        options.x_label = "t";
        options.y_label = "s_x(t)";
        write_text_file(out_path, line_chart_svg(series, options));
    };
    waveform_chart(0, 4, run_dir / "waveforms_0_4.svg");
    waveform_chart(11, 15, run_dir / "waveforms_11_15.svg");

    update_manifest(run_dir,
                    {"loss.svg", "coefficients.svg", "waveforms_0_4.svg", "waveforms_11_15.svg"});
    std::cout << "wrote loss.svg, coefficients.svg, waveforms_0_4.svg, waveforms_11_15.svg in "
              << run_dir.string() << "\n";
    return 0;
}

struct ExportArgs {
    std::string checkpoint;
    std::string xs;
    std::string out_dir;
    int grid_n = 256;
    std::string grid_convention = "open";
};

int run_export_waveforms(const ExportArgs& args) {
    const ModelParams params = load_params_file(args.checkpoint);
    const SampleGrid grid = build_grid(args.grid_n, parse_grid_convention(args.grid_convention));
    const std::vector<int> xs = parse_int_list(args.xs, "--x");
    const fs::path out_dir(args.out_dir);
    fs::create_directories(out_dir);

    // Independent per-input evaluations; FOURIER_HEAD_THREADS caps the fan-out.
    std::mutex io_mutex;
    std::vector<std::string> files(xs.size());
    parallel_for(static_cast<int>(xs.size()), evaluation_thread_cap(), [&](int i) {
        const int x = xs[static_cast<std::size_t>(i)];
        const Waveform waveform =
            sample_waveform(params, InputEncoding::one_hot(x, params.encoding_dim()), grid);
        const std::string name = waveform_csv_name(x);
        {
            std::lock_guard<std::mutex> lock(io_mutex);
            write_waveform_csv(out_dir / name, waveform);
        }
        files[static_cast<std::size_t>(i)] = name;
    });
    update_manifest(out_dir, files);
    std::cout << "wrote " << xs.size() << " waveform CSVs in " << out_dir.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Neural-waveform Fourier readout: train the toy identity task, query\n"
                 "coefficients at arbitrary frequencies, and plot the results.\n"
                 "FOURIER_HEAD_THREADS caps parallel waveform evaluation."};
    app.require_subcommand(1);

    TrainArgs train_args;
    CLI::App* train_cmd = app.add_subcommand("train", "train the toy model and write artifacts");
    train_cmd->add_option("--config", train_args.config_path, "key = value config file");
    train_cmd->add_option("--out", train_args.out_dir, "output directory")->required();
    auto* seed_opt = train_cmd->add_option("--seed", "init seed (overrides config)");
    auto* steps_opt = train_cmd->add_option("--steps", "step count (overrides config)");
    auto* grid_n_opt = train_cmd->add_option("--grid-n", "grid sample count N (overrides config)");
    auto* conv_opt = train_cmd->add_option("--grid-convention",
                                           "grid convention: open or paper (overrides config)");
    train_cmd->add_flag("--quiet", train_args.quiet, "suppress progress lines");

    EvalArgs eval_args;
    CLI::App* eval_cmd =
        app.add_subcommand("eval", "print coefficients of a trained checkpoint for one input");
    eval_cmd->add_option("--checkpoint", eval_args.checkpoint, "checkpoint file")->required();
    eval_cmd->add_option("--x", eval_args.x, "input integer")->required();
    eval_cmd->add_option("--omegas", eval_args.omegas, "comma list of frequencies")->required();
    eval_cmd->add_option("--grid-n", eval_args.grid_n, "grid sample count N");
    eval_cmd->add_option("--grid-convention", eval_args.grid_convention, "open or paper");
    eval_cmd->add_option("--out", eval_args.out_csv, "also write the table to this CSV file");

    std::string plot_dir;
    CLI::App* plot_cmd = app.add_subcommand("plot", "render SVG charts from a run directory");
    plot_cmd->add_option("run_dir", plot_dir, "directory holding loss/coefficient/waveform CSVs")
        ->required();

    ExportArgs export_args;
    CLI::App* export_cmd =
        app.add_subcommand("export-waveforms", "sample waveform CSVs from a checkpoint");
    export_cmd->add_option("--checkpoint", export_args.checkpoint, "checkpoint file")->required();
    export_cmd->add_option("--x", export_args.xs, "comma list of inputs")->required();
    export_cmd->add_option("--out", export_args.out_dir, "output directory")->required();
    export_cmd->add_option("--grid-n", export_args.grid_n, "grid sample count N");
    export_cmd->add_option("--grid-convention", export_args.grid_convention, "open or paper");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*train_cmd) {
            if (*seed_opt) train_args.seed = seed_opt->as<std::uint64_t>();
            if (*steps_opt) train_args.steps = steps_opt->as<int>();
            if (*grid_n_opt) train_args.grid_n = grid_n_opt->as<int>();
            if (*conv_opt) train_args.grid_convention = conv_opt->as<std::string>();
            return run_train(train_args);
        }
        if (*eval_cmd) return run_eval(eval_args);
        if (*plot_cmd) return run_plot(plot_dir);
        if (*export_cmd) return run_export_waveforms(export_args);
    } catch (const TrainingDivergedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
