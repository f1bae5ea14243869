#ifndef RELAYLAB_QUADRATURE_HPP
#define RELAYLAB_QUADRATURE_HPP

#include <cstddef>
#include <numbers>

#include "relaylab/signals.hpp"

namespace relaylab {

/// Trapezoidal integral of s over the index range [k_start, k_end]
/// (k_end is the last sample of the integration span). Exact for
/// piecewise-linear integrands.
double trapz(const SampledSignal& s, std::size_t k_start, std::size_t k_end);

/// A pair of equal-length integration windows separated by half a period
/// of harmonic n: [0, alpha/w0] and [pi/(n*w0), (pi/n + alpha)/w0],
/// measured from the integration origin. Adding the two integrals cancels
/// harmonic n and its odd multiples.
struct IntervalPair {
    int harmonic = 3;                      ///< rejected order n, >= 1
    double alpha = std::numbers::pi / 3.0; ///< window angle, 0 < alpha <= pi

    void validate() const;
    double window_length(double omega0) const { return alpha / omega0; }
    double second_offset(double omega0) const {
        return std::numbers::pi / (static_cast<double>(harmonic) * omega0);
    }
};

struct PairIntegrals {
    double first = 0.0;
    double second = 0.0;
    double sum() const { return first + second; }
};

/// Closed-form window integrals of an analytic series; the origin is the
/// series' own phase reference (t = 0).
PairIntegrals harmonic_pair_integrals(const FourierSeries& series,
                                      const IntervalPair& pair,
                                      const SamplingConfig& config);

/// Trapezoidal window integrals of a sampled signal; windows are anchored
/// at the first sample. Both window endpoints and the second-window offset
/// must land exactly on sample instants or the call throws; no silent
/// interpolation.
PairIntegrals harmonic_pair_integrals(const SampledSignal& s,
                                      const IntervalPair& pair);

/// Sum of the paired integrals: the filtered quantity with harmonic n and
/// its odd multiples removed.
double reject_harmonic(const FourierSeries& series, const IntervalPair& pair,
                       const SamplingConfig& config);
double reject_harmonic(const SampledSignal& s, const IntervalPair& pair);

} // namespace relaylab

#endif
