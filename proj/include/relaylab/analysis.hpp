#ifndef RELAYLAB_ANALYSIS_HPP
#define RELAYLAB_ANALYSIS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "relaylab/signals.hpp"

namespace relaylab {

/// Samples of e(t) = R*eps_i(t) + L*d(eps_i)/dt - eps_v(t): the net error
/// seen by the estimators when measured current and voltage are corrupted
/// by (eps_i, eps_v). Identically zero when the pair satisfies the line
/// equation.
using ErrorTerm = SampledSignal;

ErrorTerm effective_error(const AnalyticCurrent& eps_i,
                          const AnalyticCurrent& eps_v, double R, double L,
                          const SamplingConfig& config, double t_start = 0.0);
ErrorTerm effective_error(const FourierSeries& eps_i, const FourierSeries& eps_v,
                          double R, double L, const SamplingConfig& config,
                          double t_start = 0.0);

enum class WindowSpan { half_cycle, full_cycle };

struct FrequencyResponse {
    std::vector<double> freqs;     ///< voltage frequencies (Hz)
    std::vector<double> magnitude; ///< normalized to 1 at f0
    WindowSpan window = WindowSpan::full_cycle;
    int samples_per_cycle = 12;
};

/// Default sweep grid: f0/20 steps up to 6*f0.
std::vector<double> default_frequency_grid(double f0);

/// Response of the averaged consecutive three-sample estimates when the
/// current stays at the fundamental but the voltage frequency sweeps.
/// For each grid frequency a unit voltage sinusoid is applied, the
/// window's estimates are averaged (half cycle or full cycle of windows),
/// the magnitude |R_avg + j*w0*L_avg| is taken, averaged over 12 equally
/// spaced voltage start phases, and normalized by the same quantity at f0.
FrequencyResponse frequency_response(WindowSpan window,
                                     const SamplingConfig& config,
                                     std::span<const double> freq_grid);

struct DenominatorTrace {
    SampledSignal trace;          ///< denominator / amplitude^2 per window
    double nominal = 0.5;         ///< offset-free level 2*sin^2(w0*dt)
    double fit_amplitude = 0.0;   ///< A in trace = nominal - A*cos(w0*t + phi)*exp(-(t-t0)/tau)
    double fit_phase = 0.0;       ///< phi (radians)
};

/// Denominator diagnostic across a scenario, normalized by amplitude^2 and
/// indexed by the middle sample of each window. The time-varying part is
/// fitted against a decaying cosine and the fitted (A, phi) reported.
/// `expected_tau`, when given, must match the scenario's L/R.
DenominatorTrace denominator_trace(const FaultScenario& scn,
                                   const SamplingConfig& config,
                                   std::optional<double> expected_tau = {});

} // namespace relaylab

#endif
