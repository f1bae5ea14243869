#include "relaylab/signals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace relaylab {

void SamplingConfig::validate() const {
    if (!(f0 > 0.0) || !std::isfinite(f0))
        throw std::invalid_argument("sampling: f0 must be positive and finite");
    if (!(fs > 0.0) || !std::isfinite(fs))
        throw std::invalid_argument("sampling: fs must be positive and finite");
    if (n_samples == 0)
        throw std::invalid_argument("sampling: n_samples must be >= 1");
    const double spc = samples_per_cycle();
    if (!std::isfinite(spc) || spc < 3.0)
        throw std::invalid_argument(
            "sampling: fs/f0 must be finite and >= 3 samples per cycle");
}

FourierSeries::FourierSeries(double dc, std::vector<HarmonicTerm> terms)
    : dc_(dc), terms_(std::move(terms)) {
    std::unordered_set<int> seen;
    for (const auto& term : terms_) {
        if (term.order < 1)
            throw std::invalid_argument("fourier: harmonic order must be >= 1");
        if (!(term.amplitude >= 0.0) || !std::isfinite(term.amplitude))
            throw std::invalid_argument("fourier: amplitude must be >= 0");
        if (!seen.insert(term.order).second)
            throw std::invalid_argument("fourier: duplicate harmonic order");
    }
}

double FourierSeries::value(double t, double omega0) const {
    double acc = dc_;
    for (const auto& term : terms_)
        acc += term.amplitude *
               std::cos(static_cast<double>(term.order) * omega0 * t + term.phase);
    return acc;
}

double FourierSeries::derivative(double t, double omega0) const {
    double acc = 0.0;
    for (const auto& term : terms_) {
        const double m_w0 = static_cast<double>(term.order) * omega0;
        acc -= term.amplitude * m_w0 * std::sin(m_w0 * t + term.phase);
    }
    return acc;
}

FourierSeries FourierSeries::merged(const FourierSeries& other) const {
    // Phasor sum per order: C1*e^{j*th1} + C2*e^{j*th2}.
    std::vector<HarmonicTerm> terms = terms_;
    for (const auto& term : other.terms_) {
        auto it = std::find_if(terms.begin(), terms.end(), [&](const HarmonicTerm& t) {
            return t.order == term.order;
        });
        if (it == terms.end()) {
            terms.push_back(term);
            continue;
        }
        const double re = it->amplitude * std::cos(it->phase) +
                          term.amplitude * std::cos(term.phase);
        const double im = it->amplitude * std::sin(it->phase) +
                          term.amplitude * std::sin(term.phase);
        it->amplitude = std::hypot(re, im);
        it->phase = (it->amplitude > 0.0) ? std::atan2(im, re) : 0.0;
    }
    return FourierSeries(dc_ + other.dc_, std::move(terms));
}

double ExponentialTerm::value(double t) const {
    return amplitude * std::exp(-(t - t0) / tau);
}

double ExponentialTerm::derivative(double t) const { return -value(t) / tau; }

void ExponentialTerm::validate() const {
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw std::invalid_argument("exponential: tau must be positive and finite");
}

void FaultScenario::validate() const {
    if (!(R > 0.0) || !std::isfinite(R))
        throw std::invalid_argument("scenario: R must be positive and finite");
    if (!(L > 0.0) || !std::isfinite(L))
        throw std::invalid_argument("scenario: L must be positive and finite");
    if (!std::isfinite(tau()) || !(tau() > 0.0))
        throw std::invalid_argument("scenario: time constant L/R must be positive");
    if (!std::isfinite(amplitude) || !std::isfinite(inception_angle) ||
        !std::isfinite(t0) || !std::isfinite(phase))
        throw std::invalid_argument("scenario: parameters must be finite");
}

SampledSignal::SampledSignal(SamplingConfig config, std::vector<double> values,
                             double t_start)
    : config_(config), values_(std::move(values)), t_start_(t_start) {
    config_.validate();
    if (values_.size() != config_.n_samples)
        throw std::invalid_argument("signal: value count must equal n_samples");
}

AnalyticCurrent::AnalyticCurrent(FourierSeries series, double t_ref,
                                 std::vector<ExponentialTerm> exponentials)
    : series_(std::move(series)), t_ref_(t_ref),
      exponentials_(std::move(exponentials)) {
    for (const auto& e : exponentials_) e.validate();
}

AnalyticCurrent AnalyticCurrent::from_scenario(const FaultScenario& scn) {
    scn.validate();
    FourierSeries series(
        0.0, {{1, scn.amplitude, scn.inception_angle + scn.phase}});
    std::vector<ExponentialTerm> exps;
    if (scn.offset_enabled) {
        // Freeze the sinusoid's inception value so i(t0) = 0 when the
        // steady-state phase is zero.
        exps.push_back({-scn.amplitude * std::cos(scn.inception_angle),
                        scn.tau(), scn.t0});
    }
    return AnalyticCurrent(std::move(series), scn.t0, std::move(exps));
}

double AnalyticCurrent::value(double t, double omega0) const {
    double acc = series_.value(t - t_ref_, omega0);
    for (const auto& e : exponentials_) acc += e.value(t);
    return acc;
}

double AnalyticCurrent::derivative(double t, double omega0) const {
    double acc = series_.derivative(t - t_ref_, omega0);
    for (const auto& e : exponentials_) acc += e.derivative(t);
    return acc;
}

SampledSignal synth_fourier(const FourierSeries& series,
                            const SamplingConfig& config, double t_start) {
    const double w0 = config.omega0();
    return SampledSignal::sample(
        config, t_start, [&](double t) { return series.value(t, w0); });
}

SampledSignal fault_current(const FaultScenario& scn,
                            const SamplingConfig& config) {
    const AnalyticCurrent current = AnalyticCurrent::from_scenario(scn);
    const double w0 = config.omega0();
    return SampledSignal::sample(
        config, scn.t0, [&](double t) { return current.value(t, w0); });
}

SampledSignal line_voltage(const AnalyticCurrent& current, double R, double L,
                           const SamplingConfig& config, double t_start) {
    const double w0 = config.omega0();
    return SampledSignal::sample(config, t_start, [&](double t) {
        return R * current.value(t, w0) + L * current.derivative(t, w0);
    });
}

SampledSignal line_voltage(const FourierSeries& current, double R, double L,
                           const SamplingConfig& config, double t_start) {
    return line_voltage(AnalyticCurrent(current), R, L, config, t_start);
}

FourierSeries line_response(const FourierSeries& current, double R, double L,
                            double omega0) {
    std::vector<HarmonicTerm> terms;
    terms.reserve(current.terms().size());
    for (const auto& term : current.terms()) {
        const double x = static_cast<double>(term.order) * omega0 * L;
        terms.push_back({term.order, term.amplitude * std::hypot(R, x),
                         term.phase + std::atan2(x, R)});
    }
    return FourierSeries(R * current.dc(), std::move(terms));
}

SampledSignal add_measurement_error(const SampledSignal& s,
                                    std::span<const double> error) {
    if (error.size() != s.size())
        throw std::invalid_argument("error sequence length must match signal");
    std::vector<double> out(s.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = s[k] + error[k];
    return SampledSignal(s.config(), std::move(out), s.t_start());
}

SampledSignal add_measurement_error(const SampledSignal& s,
                                    const SampledSignal& error) {
    if (!s.config().same_grid(error.config()) || s.t_start() != error.t_start())
        throw std::invalid_argument("error signal must share the host grid");
    return add_measurement_error(s, error.values());
}

} // namespace relaylab
