#include "relaylab/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "relaylab/estimators.hpp"

namespace relaylab {

ErrorTerm effective_error(const AnalyticCurrent& eps_i,
                          const AnalyticCurrent& eps_v, double R, double L,
                          const SamplingConfig& config, double t_start) {
    const double w0 = config.omega0();
    return SampledSignal::sample(config, t_start, [&](double t) {
        return R * eps_i.value(t, w0) + L * eps_i.derivative(t, w0) -
               eps_v.value(t, w0);
    });
}

ErrorTerm effective_error(const FourierSeries& eps_i, const FourierSeries& eps_v,
                          double R, double L, const SamplingConfig& config,
                          double t_start) {
    return effective_error(AnalyticCurrent(eps_i), AnalyticCurrent(eps_v), R, L,
                           config, t_start);
}

std::vector<double> default_frequency_grid(double f0) {
    if (!(f0 > 0.0))
        throw std::invalid_argument("frequency grid: f0 must be positive");
    const double step = f0 / 20.0;
    std::vector<double> grid;
    grid.reserve(120);
    for (int j = 1; j <= 120; ++j) grid.push_back(step * j);
    return grid;
}

namespace {

constexpr int kPhaseCount = 12;

// Averaged-window magnitude |R_avg + j*w0*L_avg| for a unit voltage at
// frequency f against the fundamental-frequency current, averaged over
// kPhaseCount voltage start phases.
double window_magnitude(double f, int count, const SamplingConfig& grid_cfg) {
    const double w0 = grid_cfg.omega0();
    const double wv = kTwoPi * f;

    SamplingConfig cfg = grid_cfg;
    cfg.n_samples = static_cast<std::size_t>(count) + 2;
    const SampledSignal i =
        SampledSignal::sample(cfg, 0.0, [&](double t) { return std::cos(w0 * t); });

    double mag_acc = 0.0;
    for (int p = 0; p < kPhaseCount; ++p) {
        const double phase = kTwoPi * p / kPhaseCount;
        const SampledSignal v = SampledSignal::sample(
            cfg, 0.0, [&](double t) { return std::cos(wv * t + phase); });
        double sum_r = 0.0, sum_l = 0.0;
        for (int k = 0; k < count; ++k) {
            const RLEstimate est =
                three_sample_estimate(v, i, static_cast<std::size_t>(k));
            sum_r += est.R;
            sum_l += est.L;
        }
        mag_acc += std::hypot(sum_r / count, w0 * sum_l / count);
    }
    return mag_acc / kPhaseCount;
}

} // namespace

FrequencyResponse frequency_response(WindowSpan window,
                                     const SamplingConfig& config,
                                     std::span<const double> freq_grid) {
    if (!(config.f0 > 0.0) || !(config.fs > 0.0))
        throw std::invalid_argument("frequency_response: invalid sampling config");
    const double spc_real = config.samples_per_cycle();
    const int spc = static_cast<int>(std::lround(spc_real));
    if (std::abs(spc_real - spc) > 1e-9 || spc < 4 || spc % 2 != 0)
        throw std::invalid_argument(
            "frequency_response: fs/f0 must be an even integer >= 4");
    if (freq_grid.empty())
        throw std::invalid_argument("frequency_response: empty frequency grid");
    for (double f : freq_grid)
        if (!(f > 0.0) || !std::isfinite(f))
            throw std::invalid_argument(
                "frequency_response: frequencies must be positive");

    const int count = (window == WindowSpan::half_cycle) ? spc / 2 : spc;
    const double anchor = window_magnitude(config.f0, count, config);

    FrequencyResponse resp;
    resp.window = window;
    resp.samples_per_cycle = spc;
    resp.freqs.assign(freq_grid.begin(), freq_grid.end());
    resp.magnitude.reserve(freq_grid.size());
    for (double f : freq_grid)
        resp.magnitude.push_back(window_magnitude(f, count, config) / anchor);
    return resp;
}

DenominatorTrace denominator_trace(const FaultScenario& scn,
                                   const SamplingConfig& config,
                                   std::optional<double> expected_tau) {
    scn.validate();
    config.validate();
    if (expected_tau &&
        std::abs(*expected_tau - scn.tau()) > 1e-9 * scn.tau())
        throw std::invalid_argument(
            "denominator_trace: expected_tau does not match the scenario's L/R");
    const double spc = config.samples_per_cycle();
    if (static_cast<double>(config.n_samples) < spc + 2.0)
        throw std::invalid_argument(
            "denominator_trace: span must cover at least one cycle of windows");

    const SampledSignal i = fault_current(scn, config);
    const double scale = scn.amplitude * scn.amplitude;
    if (!(scale > 0.0))
        throw std::invalid_argument("denominator_trace: amplitude must be nonzero");

    const std::size_t n_windows = i.size() - 2;
    std::vector<double> values(n_windows);
    for (std::size_t k = 0; k < n_windows; ++k)
        values[k] = denominator(i, k) / scale;

    SamplingConfig trace_cfg = config;
    trace_cfg.n_samples = n_windows;
    DenominatorTrace out{
        SampledSignal(trace_cfg, std::move(values), scn.t0 + config.dt()),
        2.0 * std::pow(std::sin(config.omega0() * config.dt()), 2), 0.0, 0.0};

    // Fit trace - nominal = E(t) * (c1*cos(w0 t) + c2*sin(w0 t)) with
    // E = exp(-(t - t0)/tau), evaluated at the middle sample of each window.
    const double w0 = config.omega0();
    const double tau = scn.tau();
    double g11 = 0.0, g12 = 0.0, g22 = 0.0, r1 = 0.0, r2 = 0.0;
    for (std::size_t k = 0; k < n_windows; ++k) {
        const double t = out.trace.time_at(k);
        const double env = std::exp(-(t - scn.t0) / tau);
        const double u1 = env * std::cos(w0 * t);
        const double u2 = env * std::sin(w0 * t);
        const double y = out.trace[k] - out.nominal;
        g11 += u1 * u1;
        g12 += u1 * u2;
        g22 += u2 * u2;
        r1 += u1 * y;
        r2 += u2 * y;
    }
    const double gram = g11 * g22 - g12 * g12;
    if (gram > 0.0) {
        const double c1 = (r1 * g22 - r2 * g12) / gram;
        const double c2 = (g11 * r2 - g12 * r1) / gram;
        out.fit_amplitude = std::hypot(c1, c2);
        // Convention: trace = nominal - A*cos(w0 t + phi)*E(t).
        out.fit_phase = (out.fit_amplitude > 1e-12) ? std::atan2(c2, -c1) : 0.0;
        if (out.fit_amplitude <= 1e-12) out.fit_amplitude = 0.0;
    }
    return out;
}

} // namespace relaylab
