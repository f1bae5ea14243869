#include "relaylab/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <stdexcept>

#include <CLI11.hpp>

#include "relaylab/analysis.hpp"
#include "relaylab/estimators.hpp"
#include "relaylab/quadrature.hpp"

namespace relaylab {

namespace {

// Nominal decaying-cosine coefficients for the canonical twelve-sample,
// 40 ms time-constant case, emitted next to the fitted values.
constexpr double kRefFitAmplitude = 0.5384;
constexpr double kRefFitPhaseDeg = 7.41;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open output file " + path);
    }

    void raw_line(const std::string& line) { out_ << line << "\n"; }

    template <class... Fields>
    void row(const Fields&... fields) {
        bool first = true;
        ((out_ << (first ? "" : ","), first = false, put(fields)), ...);
        out_ << "\n";
    }

    void finish(const std::string& path) {
        out_.flush();
        if (!out_) throw std::runtime_error("failed writing " + path);
    }

private:
    void put(double x) { out_ << fmt(x); }
    void put(std::size_t x) { out_ << x; }
    void put(int x) { out_ << x; }
    void put(bool x) { out_ << (x ? 1 : 0); }
    void put(const char* s) { out_ << s; }
    void put(const std::string& s) { out_ << s; }

    std::ofstream out_;
};

std::vector<double> white_noise(std::mt19937_64& rng, double sigma,
                                std::size_t n) {
    std::vector<double> noise(n, 0.0);
    if (sigma > 0.0) {
        std::normal_distribution<double> dist(0.0, sigma);
        for (double& x : noise) x = dist(rng);
    }
    return noise;
}

} // namespace

Waveforms build_waveforms(const ScenarioConfig& cfg) {
    const SampledSignal i = fault_current(cfg.scenario, cfg.sampling);
    const SampledSignal v =
        line_voltage(AnalyticCurrent::from_scenario(cfg.scenario), cfg.scenario.R,
                     cfg.scenario.L, cfg.sampling, cfg.scenario.t0);

    SampledSignal i_measured = i;
    SampledSignal v_measured = v;
    if (cfg.errors.current_error)
        i_measured = add_measurement_error(
            i_measured,
            synth_fourier(*cfg.errors.current_error, cfg.sampling, i.t_start()));
    if (cfg.errors.voltage_error)
        v_measured = add_measurement_error(
            v_measured,
            synth_fourier(*cfg.errors.voltage_error, cfg.sampling, v.t_start()));
    if (cfg.errors.has_noise()) {
        // One generator, current stream drawn before voltage stream.
        std::mt19937_64 rng(cfg.errors.seed);
        i_measured = add_measurement_error(
            i_measured,
            white_noise(rng, cfg.errors.current_noise_sigma, i.size()));
        v_measured = add_measurement_error(
            v_measured,
            white_noise(rng, cfg.errors.voltage_noise_sigma, v.size()));
    }
    return {i, v, std::move(i_measured), std::move(v_measured)};
}

void cmd_simulate(const ScenarioConfig& cfg, const std::string& out_path) {
    const Waveforms w = build_waveforms(cfg);
    CsvWriter csv(out_path);
    csv.row("t", "i", "v", "i_measured", "v_measured");
    for (std::size_t k = 0; k < w.i.size(); ++k)
        csv.row(w.i.time_at(k), w.i[k], w.v[k], w.i_measured[k], w.v_measured[k]);
    csv.finish(out_path);
}

void cmd_estimate(const ScenarioConfig& cfg, const std::string& out_path,
                  std::ostream& log) {
    if (!cfg.zone)
        throw ConfigError("config: $.zone: required by the estimate command");
    const Waveforms w = build_waveforms(cfg);

    EstimateSeries estimates;
    std::size_t window_samples = 3; // samples consumed by one estimate
    switch (cfg.estimator.kind) {
        case EstimatorChoice::Kind::short_window:
            estimates = estimate_series(w.v_measured, w.i_measured);
            break;
        case EstimatorChoice::Kind::long_window: {
            const std::size_t rows = cfg.estimator.param;
            window_samples = rows + 1;
            if (w.i.size() < rows + 2)
                throw ConfigError("config: $.estimator.rows: window exceeds n_samples");
            for (std::size_t k = 0; k + rows < w.i.size(); ++k)
                estimates.push_back(
                    long_window_ls(w.v_measured, w.i_measured, k, rows));
            break;
        }
        case EstimatorChoice::Kind::averaged: {
            const std::size_t count = cfg.estimator.param;
            window_samples = count + 2;
            if (w.i.size() < count + 3)
                throw ConfigError("config: $.estimator.count: span exceeds n_samples");
            for (std::size_t k = 0; k + count + 1 < w.i.size(); ++k)
                estimates.push_back(
                    averaged_estimates(w.v_measured, w.i_measured, k, count)
                        .estimate);
            break;
        }
    }

    std::vector<bool> inside(estimates.size());
    for (std::size_t j = 0; j < estimates.size(); ++j)
        inside[j] = zone_contains(*cfg.zone, estimates[j]);
    const CounterScan scan = scan_counter(inside, cfg.trip_threshold);

    CsvWriter csv(out_path);
    csv.row("k", "t", "R", "L", "denominator", "valid", "in_zone", "counter",
            "trip_flag");
    for (std::size_t j = 0; j < estimates.size(); ++j) {
        const RLEstimate& est = estimates[j];
        const bool tripped = scan.trip_index && j >= *scan.trip_index;
        csv.row(est.k, w.i.time_at(est.k), est.R, est.L, est.denominator,
                est.valid, static_cast<bool>(inside[j]), scan.trace[j], tripped);
    }
    csv.finish(out_path);

    if (scan.trip_index) {
        const std::size_t last_sample =
            estimates[*scan.trip_index].k + window_samples - 1;
        log << "trip: estimate_window=" << estimates[*scan.trip_index].k
            << " sample_index=" << last_sample << " t=" << fmt(w.i.time_at(last_sample))
            << " samples_used=" << last_sample + 1 << "\n";
    } else {
        log << "trip: none\n";
    }
}

void cmd_freqresp(const ScenarioConfig& cfg, const std::string& out_path) {
    const double f0 = cfg.sampling.f0;
    const double spc = cfg.sampling.samples_per_cycle();
    if (spc != std::floor(spc) || static_cast<int>(spc) % 2 != 0)
        throw ConfigError(
            "config: $.sampling: freqresp needs fs_hz/f0_hz to be an even integer");
    const double f_max = cfg.analysis.f_max.value_or(6.0 * f0);
    const double f_step = cfg.analysis.f_step.value_or(f0 / 20.0);
    if (f_step > f_max)
        throw ConfigError("config: $.analysis: f_step_hz must not exceed f_max_hz");
    std::vector<double> grid;
    for (double f = f_step; f <= f_max * (1.0 + 1e-12); f += f_step)
        grid.push_back(f);

    const FrequencyResponse half =
        frequency_response(WindowSpan::half_cycle, cfg.sampling, grid);
    const FrequencyResponse full =
        frequency_response(WindowSpan::full_cycle, cfg.sampling, grid);

    CsvWriter csv(out_path);
    csv.row("f", "magnitude_halfcycle", "magnitude_fullcycle");
    for (std::size_t j = 0; j < grid.size(); ++j)
        csv.row(grid[j], half.magnitude[j], full.magnitude[j]);
    csv.finish(out_path);
}

void cmd_denominator(const ScenarioConfig& cfg, const std::string& out_path) {
    SamplingConfig sampling = cfg.sampling;
    if (cfg.analysis.trace_cycles) {
        const double spc = sampling.samples_per_cycle();
        sampling.n_samples = static_cast<std::size_t>(std::lround(
                                 spc * static_cast<double>(*cfg.analysis.trace_cycles))) +
                             2;
    }
    if (static_cast<double>(sampling.n_samples) <
        sampling.samples_per_cycle() + 2.0)
        throw ConfigError(
            "config: $.sampling.n_samples: denominator trace needs at least one "
            "cycle of windows (raise n_samples or analysis.trace_cycles)");
    const DenominatorTrace result = denominator_trace(cfg.scenario, sampling);

    CsvWriter csv(out_path);
    csv.raw_line("# fit_A=" + fmt(result.fit_amplitude) +
                 " fit_phi_deg=" + fmt(result.fit_phase * 180.0 / std::numbers::pi) +
                 " ref_A=" + fmt(kRefFitAmplitude) +
                 " ref_phi_deg=" + fmt(kRefFitPhaseDeg) +
                 " nominal=" + fmt(result.nominal));
    csv.row("k", "t", "denominator_normalized");
    for (std::size_t k = 0; k < result.trace.size(); ++k)
        csv.row(k, result.trace.time_at(k), result.trace[k]);
    csv.finish(out_path);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Differential-equation relay laboratory"};
    app.require_subcommand(1);

    struct SubOptions {
        std::string config_path;
        std::string out_path;
        std::optional<std::uint64_t> seed;
    };
    SubOptions opts;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opts.config_path, "JSON configuration file")
            ->required();
        sub->add_option("--out", opts.out_path, "output CSV path")->required();
        sub->add_option("--seed", opts.seed,
                        "override the error-model seed from the config");
    };
    CLI::App* simulate =
        app.add_subcommand("simulate", "emit clean and measured waveforms");
    CLI::App* estimate =
        app.add_subcommand("estimate", "run estimators and trip logic");
    CLI::App* freqresp =
        app.add_subcommand("freqresp", "averaged-window frequency response sweep");
    CLI::App* denom =
        app.add_subcommand("denominator", "three-sample denominator trace");
    for (CLI::App* sub : {simulate, estimate, freqresp, denom}) add_common(sub);

    // CLI11's vector overload expects the arguments reversed, no program name.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        ScenarioConfig cfg = load_config(opts.config_path);
        if (opts.seed) {
            cfg.errors.seed = *opts.seed;
            cfg.seed_given = true;
        }
        if (cfg.errors.has_noise() && !cfg.seed_given)
            throw ConfigError(
                "config: $.error_model.seed: required when noise sigmas are set");

        if (simulate->parsed()) cmd_simulate(cfg, opts.out_path);
        if (estimate->parsed()) cmd_estimate(cfg, opts.out_path, out);
        if (freqresp->parsed()) cmd_freqresp(cfg, opts.out_path);
        if (denom->parsed()) cmd_denominator(cfg, opts.out_path);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

} // namespace relaylab
