#ifndef RELAYLAB_ESTIMATORS_HPP
#define RELAYLAB_ESTIMATORS_HPP

#include <cstddef>
#include <vector>

#include "relaylab/signals.hpp"

namespace relaylab {

/// Windows whose |denominator| falls below this fraction of
/// (max |i| over the window)^2 are flagged invalid instead of producing
/// arbitrarily amplified estimates.
inline constexpr double kSingularityFloor = 1e-9;

/// One (R, L) estimate. `denominator` carries 2*(i_{k+1}^2 - i_k*i_{k+2})
/// for three-sample windows and the Gram determinant of the normal
/// equations for least-squares windows. When valid is false, R and L are
/// NaN and carry no meaning.
struct RLEstimate {
    double R = 0.0;
    double L = 0.0;
    double denominator = 0.0;
    std::size_t k = 0;
    bool valid = false;
};

/// Sequence of estimates whose window indices advance by one sample.
using EstimateSeries = std::vector<RLEstimate>;

/// The three-sample denominator diagnostic 2*(i_{k+1}^2 - i_k*i_{k+2}).
/// Constant for an offset-free sinusoid, time-varying (with zeros) when a
/// decaying offset is present.
double denominator(const SampledSignal& i, std::size_t k);

/// Solves the two-equation trapezoidal system on samples k, k+1, k+2 by
/// direct elimination:
///
///   [ dt/2*(i_{k+1}+i_k)     (i_{k+1}-i_k)     ] [R]   [ dt/2*(v_{k+1}+v_k)     ]
///   [ dt/2*(i_{k+2}+i_{k+1}) (i_{k+2}-i_{k+1}) ] [L] = [ dt/2*(v_{k+2}+v_{k+1}) ]
RLEstimate three_sample_estimate(const SampledSignal& v, const SampledSignal& i,
                                 std::size_t k);

/// Least-squares solution of the over-determined window of `rows`
/// single-step trapezoidal equations starting at sample k, via the 2x2
/// normal equations. rows == 2 reproduces the three-sample solution.
RLEstimate long_window_ls(const SampledSignal& v, const SampledSignal& i,
                          std::size_t k, std::size_t rows);

struct AveragedEstimate {
    RLEstimate estimate;
    std::size_t n_used = 0;    ///< valid members that entered the mean
    std::size_t n_invalid = 0; ///< members excluded as invalid
};

/// Arithmetic mean of `count` consecutive three-sample estimates starting
/// at k. Invalid members are excluded; if every member is invalid the
/// result itself is invalid.
AveragedEstimate averaged_estimates(const SampledSignal& v,
                                    const SampledSignal& i, std::size_t k,
                                    std::size_t count);

/// Three-sample estimates at every eligible window position.
EstimateSeries estimate_series(const SampledSignal& v, const SampledSignal& i);

} // namespace relaylab

#endif
