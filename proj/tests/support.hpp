#ifndef RELAYLAB_TESTS_SUPPORT_HPP
#define RELAYLAB_TESTS_SUPPORT_HPP

// Test-side oracles, independent of the library code they check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "relaylab/signals.hpp"

namespace testsupport {

/// Composite Simpson quadrature; used as the independent integral oracle.
template <class Fn>
double simpson(Fn&& fn, double a, double b, int panels = 4000) {
    const double h = (b - a) / (2 * panels);
    double acc = fn(a) + fn(b);
    for (int j = 1; j < 2 * panels; ++j)
        acc += fn(a + j * h) * ((j % 2) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

inline std::vector<double> ranks(const std::vector<double>& x) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(x.size());
    std::size_t j = 0;
    while (j < idx.size()) {
        std::size_t j2 = j;
        while (j2 + 1 < idx.size() && x[idx[j2 + 1]] == x[idx[j]]) ++j2;
        const double avg = 0.5 * static_cast<double>(j + j2) + 1.0;
        for (std::size_t q = j; q <= j2; ++q) r[idx[q]] = avg;
        j = j2 + 1;
    }
    return r;
}

/// Spearman rank correlation (average ranks on ties).
inline double spearman(const std::vector<double>& x,
                       const std::vector<double>& y) {
    const std::vector<double> rx = ranks(x);
    const std::vector<double> ry = ranks(y);
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        mx += rx[j];
        my += ry[j];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        sxy += (rx[j] - mx) * (ry[j] - my);
        sxx += (rx[j] - mx) * (rx[j] - mx);
        syy += (ry[j] - my) * (ry[j] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

inline double rel_err(double value, double truth) {
    return std::abs(value - truth) / std::abs(truth);
}

/// Oracle-consistent sinusoidal (i, v) pair built from the closed form
/// v = R*I*cos(w0 t + ph) - w0*L*I*sin(w0 t + ph), bypassing the library's
/// voltage oracle.
struct SinePair {
    relaylab::SampledSignal i;
    relaylab::SampledSignal v;
};

inline SinePair sine_pair(const relaylab::SamplingConfig& cfg, double R,
                          double L, double amp, double phase,
                          double t_start = 0.0) {
    const double w0 = cfg.omega0();
    std::vector<double> iv(cfg.n_samples), vv(cfg.n_samples);
    for (std::size_t k = 0; k < cfg.n_samples; ++k) {
        const double t = t_start + static_cast<double>(k) * cfg.dt();
        iv[k] = amp * std::cos(w0 * t + phase);
        vv[k] = R * amp * std::cos(w0 * t + phase) -
                w0 * L * amp * std::sin(w0 * t + phase);
    }
    return {relaylab::SampledSignal(cfg, std::move(iv), t_start),
            relaylab::SampledSignal(cfg, std::move(vv), t_start)};
}

/// Maximum-offset pair: the decaying exponential rides on the current but
/// adds no voltage because it solves the homogeneous line equation.
inline SinePair max_offset_pair(const relaylab::SamplingConfig& cfg, double R,
                                double L, double amp) {
    const double w0 = cfg.omega0();
    const double tau = L / R;
    std::vector<double> iv(cfg.n_samples), vv(cfg.n_samples);
    for (std::size_t k = 0; k < cfg.n_samples; ++k) {
        const double t = static_cast<double>(k) * cfg.dt();
        iv[k] = amp * (std::cos(w0 * t) - std::exp(-t / tau));
        vv[k] = R * amp * std::cos(w0 * t) - w0 * L * amp * std::sin(w0 * t);
    }
    return {relaylab::SampledSignal(cfg, std::move(iv), 0.0),
            relaylab::SampledSignal(cfg, std::move(vv), 0.0)};
}

/// Trapezoidal L bias on a pure sinusoid: the estimate converges to
/// L * (theta/2) / tan(theta/2) with theta = w0 * dt.
inline double trapezoid_l_gain(const relaylab::SamplingConfig& cfg) {
    const double half_theta = 0.5 * cfg.omega0() * cfg.dt();
    return half_theta / std::tan(half_theta);
}

} // namespace testsupport

#endif
