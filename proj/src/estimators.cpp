#include "relaylab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace relaylab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_pair(const SampledSignal& v, const SampledSignal& i) {
    if (!v.config().same_grid(i.config()) || v.t_start() != i.t_start())
        throw std::invalid_argument("estimator: v and i must share grid and origin");
}

RLEstimate invalid_estimate(std::size_t k, double den) {
    return {kNaN, kNaN, den, k, false};
}

} // namespace

double denominator(const SampledSignal& i, std::size_t k) {
    if (k + 2 >= i.size())
        throw std::out_of_range("denominator: window exceeds signal");
    return 2.0 * (i[k + 1] * i[k + 1] - i[k] * i[k + 2]);
}

RLEstimate three_sample_estimate(const SampledSignal& v, const SampledSignal& i,
                                 std::size_t k) {
    require_pair(v, i);
    if (k + 2 >= i.size())
        throw std::out_of_range("three_sample_estimate: window exceeds signal");

    const double den = denominator(i, k);
    const double peak =
        std::max({std::abs(i[k]), std::abs(i[k + 1]), std::abs(i[k + 2])});
    if (std::abs(den) < kSingularityFloor * peak * peak || den == 0.0)
        return invalid_estimate(k, den);

    const double half_dt = 0.5 * i.config().dt();
    const double a11 = half_dt * (i[k + 1] + i[k]);
    const double a12 = i[k + 1] - i[k];
    const double a21 = half_dt * (i[k + 2] + i[k + 1]);
    const double a22 = i[k + 2] - i[k + 1];
    const double b1 = half_dt * (v[k + 1] + v[k]);
    const double b2 = half_dt * (v[k + 2] + v[k + 1]);

    const double det = a11 * a22 - a12 * a21;
    if (det == 0.0) return invalid_estimate(k, den);

    return {(b1 * a22 - b2 * a12) / det, (a11 * b2 - a21 * b1) / det, den, k,
            true};
}

RLEstimate long_window_ls(const SampledSignal& v, const SampledSignal& i,
                          std::size_t k, std::size_t rows) {
    require_pair(v, i);
    if (rows < 2)
        throw std::invalid_argument("long_window_ls: need at least 2 rows");
    if (k + rows >= i.size())
        throw std::out_of_range("long_window_ls: window exceeds signal");

    const double half_dt = 0.5 * i.config().dt();
    double g11 = 0.0, g12 = 0.0, g22 = 0.0, r1 = 0.0, r2 = 0.0;
    for (std::size_t j = 0; j < rows; ++j) {
        const double a1 = half_dt * (i[k + j + 1] + i[k + j]);
        const double a2 = i[k + j + 1] - i[k + j];
        const double b = half_dt * (v[k + j + 1] + v[k + j]);
        g11 += a1 * a1;
        g12 += a1 * a2;
        g22 += a2 * a2;
        r1 += a1 * b;
        r2 += a2 * b;
    }
    const double gram = g11 * g22 - g12 * g12;
    if (!(g11 > 0.0) || !(g22 > 0.0) || gram <= kSingularityFloor * g11 * g22)
        return invalid_estimate(k, gram);
    return {(r1 * g22 - r2 * g12) / gram, (g11 * r2 - g12 * r1) / gram, gram, k,
            true};
}

AveragedEstimate averaged_estimates(const SampledSignal& v,
                                    const SampledSignal& i, std::size_t k,
                                    std::size_t count) {
    require_pair(v, i);
    if (count < 1)
        throw std::invalid_argument("averaged_estimates: count must be >= 1");
    if (k + count + 1 >= i.size())
        throw std::out_of_range("averaged_estimates: span exceeds signal");

    AveragedEstimate out;
    double sum_r = 0.0, sum_l = 0.0, sum_den = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
        const RLEstimate est = three_sample_estimate(v, i, k + j);
        if (!est.valid) {
            ++out.n_invalid;
            continue;
        }
        ++out.n_used;
        sum_r += est.R;
        sum_l += est.L;
        sum_den += est.denominator;
    }
    if (out.n_used == 0) {
        out.estimate = invalid_estimate(k, 0.0);
        return out;
    }
    const double n = static_cast<double>(out.n_used);
    out.estimate = {sum_r / n, sum_l / n, sum_den / n, k, true};
    return out;
}

EstimateSeries estimate_series(const SampledSignal& v, const SampledSignal& i) {
    require_pair(v, i);
    if (i.size() < 3)
        throw std::invalid_argument("estimate_series: need at least 3 samples");
    EstimateSeries series;
    series.reserve(i.size() - 2);
    for (std::size_t k = 0; k + 2 < i.size(); ++k)
        series.push_back(three_sample_estimate(v, i, k));
    return series;
}

} // namespace relaylab
