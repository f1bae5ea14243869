#include "relaylab/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace relaylab {

double trapz(const SampledSignal& s, std::size_t k_start, std::size_t k_end) {
    if (k_start >= k_end)
        throw std::invalid_argument("trapz: k_start must be < k_end");
    if (k_end >= s.size())
        throw std::out_of_range("trapz: k_end out of range");
    const double half_dt = 0.5 * s.config().dt();
    double area = 0.0;
    for (std::size_t k = k_start; k < k_end; ++k)
        area += half_dt * (s[k] + s[k + 1]);
    return area;
}

void IntervalPair::validate() const {
    if (harmonic < 1)
        throw std::invalid_argument("interval pair: harmonic order must be >= 1");
    if (!(alpha > 0.0) || !(alpha <= std::numbers::pi))
        throw std::invalid_argument("interval pair: alpha must be in (0, pi]");
}

namespace {

// Integral of one cosine term over [a, b].
double term_integral(const HarmonicTerm& term, double omega0, double a, double b) {
    const double m_w0 = static_cast<double>(term.order) * omega0;
    return term.amplitude / m_w0 *
           (std::sin(m_w0 * b + term.phase) - std::sin(m_w0 * a + term.phase));
}

double series_integral(const FourierSeries& series, double omega0, double a,
                       double b) {
    double acc = series.dc() * (b - a);
    for (const auto& term : series.terms())
        acc += term_integral(term, omega0, a, b);
    return acc;
}

// Converts a time offset to a sample count, requiring it to land on the grid.
std::size_t grid_steps(double offset, double dt, const char* what) {
    const double q = offset / dt;
    const double rounded = std::round(q);
    if (std::abs(q - rounded) > 1e-9 * std::max(1.0, std::abs(q)))
        throw std::invalid_argument(std::string("interval pair: ") + what +
                                    " does not land on a sample instant");
    return static_cast<std::size_t>(rounded);
}

} // namespace

PairIntegrals harmonic_pair_integrals(const FourierSeries& series,
                                      const IntervalPair& pair,
                                      const SamplingConfig& config) {
    pair.validate();
    if (!(config.f0 > 0.0) || !std::isfinite(config.f0))
        throw std::invalid_argument("interval pair: f0 must be positive");
    const double w0 = config.omega0();
    const double len = pair.window_length(w0);
    const double shift = pair.second_offset(w0);
    return {series_integral(series, w0, 0.0, len),
            series_integral(series, w0, shift, shift + len)};
}

PairIntegrals harmonic_pair_integrals(const SampledSignal& s,
                                      const IntervalPair& pair) {
    pair.validate();
    const double w0 = s.config().omega0();
    const double dt = s.config().dt();
    const std::size_t len = grid_steps(pair.window_length(w0), dt, "window length");
    const std::size_t shift =
        grid_steps(pair.second_offset(w0), dt, "second-window offset");
    if (len == 0)
        throw std::invalid_argument("interval pair: window shorter than one sample step");
    if (shift + len >= s.size())
        throw std::out_of_range("interval pair: windows exceed the signal span");
    return {trapz(s, 0, len), trapz(s, shift, shift + len)};
}

double reject_harmonic(const FourierSeries& series, const IntervalPair& pair,
                       const SamplingConfig& config) {
    return harmonic_pair_integrals(series, pair, config).sum();
}

double reject_harmonic(const SampledSignal& s, const IntervalPair& pair) {
    return harmonic_pair_integrals(s, pair).sum();
}

} // namespace relaylab
