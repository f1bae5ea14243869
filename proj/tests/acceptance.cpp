// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any criterion fails. Every tolerance is pinned here, in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "relaylab/analysis.hpp"
#include "relaylab/estimators.hpp"
#include "relaylab/quadrature.hpp"
#include "relaylab/signals.hpp"
#include "relaylab/trip.hpp"
#include "support.hpp"

using namespace relaylab;
using testsupport::spearman;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Oracle recovery: 100 random scenarios at fs = 2 kHz; every valid
//    window within 0.1 % (offset-free) resp. 0.5 % (maximum offset).
Outcome criterion_oracle_recovery() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(11042);
    std::uniform_real_distribution<double> rd(0.2, 8.0), ld(0.02, 0.2),
        ad(10.0, 1000.0), phd(0.0, kTwoPi);
    const SamplingConfig cfg{60.0, 2000.0, 69};

    double max_plain = 0.0, max_offset = 0.0;
    std::size_t offset_violations = 0, offset_windows = 0;
    for (int trial = 0; trial < 100; ++trial) {
        FaultScenario scn;
        scn.R = rd(rng);
        scn.L = ld(rng);
        scn.amplitude = ad(rng);
        scn.inception_angle = phd(rng);
        scn.offset_enabled = false;

        const SampledSignal i = fault_current(scn, cfg);
        const SampledSignal v = line_voltage(
            AnalyticCurrent::from_scenario(scn), scn.R, scn.L, cfg, scn.t0);
        for (std::size_t k = 0; k + 2 < i.size(); ++k) {
            const RLEstimate est = three_sample_estimate(v, i, k);
            if (!est.valid) continue;
            max_plain = std::max({max_plain, std::abs(est.R - scn.R) / scn.R,
                                  std::abs(est.L - scn.L) / scn.L});
        }

        FaultScenario off = scn;
        off.inception_angle = 0.0; // maximum offset
        off.offset_enabled = true;
        const SampledSignal io = fault_current(off, cfg);
        const SampledSignal vo = line_voltage(
            AnalyticCurrent::from_scenario(off), off.R, off.L, cfg, off.t0);
        for (std::size_t k = 0; k + 2 < io.size(); ++k) {
            const RLEstimate est = three_sample_estimate(vo, io, k);
            if (!est.valid) continue;
            ++offset_windows;
            const double err = std::max(std::abs(est.R - off.R) / off.R,
                                        std::abs(est.L - off.L) / off.L);
            max_offset = std::max(max_offset, err);
            if (err > 5e-3) ++offset_violations;
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    Outcome out;
    out.pass = max_plain <= 1e-3 && max_offset <= 5e-3 && elapsed < 5.0;
    std::ostringstream detail;
    detail << "offset-free max err " << sci(max_plain) << " (bound 1e-3; the L "
           << "component carries the deterministic trapezoidal bias "
           << "(theta/2)/tan(theta/2)-1 = " << sci(0.5 * kTwoPi * 60.0 / 2000.0 /
                                                   std::tan(0.5 * kTwoPi * 60.0 /
                                                            2000.0) -
                                               1.0)
           << " at 2 kHz); max-offset max err " << sci(max_offset)
           << " with " << offset_violations << "/" << offset_windows
           << " flag-valid windows over 5e-3 (denominator sweeps through zero "
           << "while the 1e-9 validity floor keeps those windows valid); "
           << "runtime " << sci(elapsed) << " s";
    out.detail = detail.str();
    return out;
}

// ---------------------------------------------------------------------------
// 2. Exactness on linear signals.
Outcome criterion_linear_exactness() {
    double worst = 0.0;
    // a, b, R, L, fs, samples. Spans are kept short enough that the window
    // denominator 2*(b*dt)^2 is not destroyed by cancellation against i^2
    // (relative error grows like (i_max/(b*dt))^3 * eps).
    const double cases[][6] = {{0.0, 1.0, 2.0, 0.5, 2000.0, 10},
                               {-0.05, 12.0, 0.7, 0.12, 720.0, 8}};
    for (const auto& c : cases) {
        const double a = c[0], b = c[1], R = c[2], L = c[3];
        const SamplingConfig cfg{60.0, c[4], static_cast<std::size_t>(c[5])};
        const SampledSignal i = SampledSignal::sample(
            cfg, 0.0, [&](double t) { return a + b * t; });
        const SampledSignal v = SampledSignal::sample(
            cfg, 0.0, [&](double t) { return R * (a + b * t) + L * b; });
        for (std::size_t k = 0; k + 2 < i.size(); ++k) {
            const RLEstimate est = three_sample_estimate(v, i, k);
            if (!est.valid) return {false, "window flagged invalid"};
            worst = std::max({worst, std::abs(est.R - R) / std::abs(R),
                              std::abs(est.L - L) / std::abs(L)});
        }
    }
    return {worst <= 1e-12, "max relative error " + sci(worst) + " (bound 1e-12)"};
}

// ---------------------------------------------------------------------------
// 3. Denominator identity and the maximum-offset trace.
Outcome criterion_denominator() {
    const SamplingConfig cfg{60.0, 720.0, 26};
    const double amp = 100.0;
    const SampledSignal i =
        synth_fourier(FourierSeries(0.0, {{1, amp, 0.3}}), cfg);
    double worst = 0.0;
    for (std::size_t k = 0; k + 2 < i.size(); ++k)
        worst = std::max(worst, std::abs(denominator(i, k) - 0.5 * amp * amp) /
                                    (0.5 * amp * amp));
    if (worst > 1e-9)
        return {false, "sinusoid denominator off by " + sci(worst)};

    FaultScenario scn;
    scn.R = 1.0;
    scn.L = 0.04; // 40 ms
    scn.amplitude = amp;
    SamplingConfig span = cfg;
    span.n_samples = 12 * 16 + 2;
    const DenominatorTrace trace = denominator_trace(scn, span);
    double first_cycle_min = 1e300;
    for (std::size_t k = 0; k < 12; ++k)
        first_cycle_min = std::min(first_cycle_min, trace.trace[k]);
    double tail_worst = 0.0;
    for (std::size_t k = 0; k < trace.trace.size(); ++k)
        if (trace.trace.time_at(k) >= 0.200)
            tail_worst = std::max(tail_worst, std::abs(trace.trace[k] - 0.5));

    const bool pass = first_cycle_min < 0.25 && tail_worst < 0.005;
    return {pass, "sinusoid max dev " + sci(worst) + "; first-cycle min " +
                      sci(first_cycle_min) + " (< 0.25); after 200 ms |trace-0.5| <= " +
                      sci(tail_worst) + " (< 5e-3)"};
}

// ---------------------------------------------------------------------------
// 4. Harmonic cancellation, analytic and sampled O(dt^2) convergence.
Outcome criterion_harmonic_cancellation() {
    const SamplingConfig base{60.0, 720.0, 1};
    const double amp = 1.3, phase = 0.8;
    double worst_ratio = 0.0;
    for (int n : {2, 3, 5}) {
        const IntervalPair pair{n, std::numbers::pi / 3.0};
        for (int mult : {1, 3, 5}) {
            const FourierSeries one(0.0, {{n * mult, amp, phase}});
            const double sum = reject_harmonic(one, pair, base);
            const double bound = 1e-12 * amp / (n * base.omega0());
            worst_ratio = std::max(worst_ratio, std::abs(sum) / bound);
        }
    }
    if (worst_ratio > 1.0)
        return {false, "analytic cancellation residual at " + sci(worst_ratio) +
                           "x the 1e-12 bound"};

    const IntervalPair pair{2, std::numbers::pi / 2.0};
    const FourierSeries fund(0.0, {{1, 1.0, 0.7}});
    std::vector<double> errs;
    for (double fs : {3840.0, 7680.0, 15360.0}) {
        SamplingConfig cfg{60.0, fs, 0};
        cfg.n_samples = static_cast<std::size_t>(fs / 120.0) + 2;
        const double analytic = harmonic_pair_integrals(fund, pair, cfg).sum();
        const double sampled =
            harmonic_pair_integrals(synth_fourier(fund, cfg), pair).sum();
        errs.push_back(std::abs(sampled - analytic));
    }
    const double r1 = errs[0] / errs[1], r2 = errs[1] / errs[2];
    const bool second_order = r1 > 3.0 && r1 < 5.0 && r2 > 3.0 && r2 < 5.0;
    return {second_order, "analytic residual " + sci(worst_ratio) +
                              "x bound; error ratios per fs doubling " + sci(r1) +
                              ", " + sci(r2) + " (expect ~4)"};
}

// ---------------------------------------------------------------------------
// 5. Error-term nulling and the matching estimator outputs.
Outcome criterion_error_nulling() {
    const SamplingConfig cfg{60.0, 2000.0, 69};
    const double R = 2.0, L = 0.05, amp = 100.0;

    const FourierSeries eps_unit(0.0, {{3, 0.1, 0.7}});
    const ErrorTerm e = effective_error(
        eps_unit, line_response(eps_unit, R, L, cfg.omega0()), R, L, cfg);
    double peak = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k)
        peak = std::max(peak, std::abs(e[k]));
    if (peak > 1e-12)
        return {false, "effective error peak " + sci(peak) + " (bound 1e-12)"};

    const FourierSeries current(0.0, {{1, amp, 0.0}});
    const SampledSignal i = synth_fourier(current, cfg);
    const SampledSignal v = line_voltage(current, R, L, cfg);
    const FourierSeries eps_i(0.0, {{3, 0.1 * amp, 0.7}});
    const SampledSignal i_m =
        add_measurement_error(i, synth_fourier(eps_i, cfg));
    const SampledSignal v_m = add_measurement_error(
        v, synth_fourier(line_response(eps_i, R, L, cfg.omega0()), cfg));

    // Full-cycle least squares: consistent errors must not shift the output
    // beyond discretization differences.
    const RLEstimate clean = long_window_ls(v, i, 0, 33);
    const RLEstimate dirty = long_window_ls(v_m, i_m, 0, 33);
    const double dr = std::abs(dirty.R - clean.R) / R;
    const double dl = std::abs(dirty.L - clean.L) / L;
    const bool pass = clean.valid && dirty.valid && dr <= 5e-3 && dl <= 5e-3;
    return {pass, "effective-error peak " + sci(peak) +
                      "; full-cycle LS shift dR " + sci(dr) + ", dL " + sci(dl) +
                      " (bound 5e-3)"};
}

// ---------------------------------------------------------------------------
// 6. Trip timing: six samples to trip, delay-not-reset.
Outcome criterion_trip_timing() {
    const SamplingConfig cfg{60.0, 720.0, 15};
    const double R = 2.0, L = 0.08, amp = 100.0;
    const FourierSeries current(0.0, {{1, amp, 0.0}});
    const SampledSignal i = synth_fourier(current, cfg);
    const SampledSignal v = line_voltage(current, R, L, cfg);
    const ZoneCharacteristic zone(RectZone{1.0, 3.0, 0.04, 0.12});

    const RelayResult relay = run_relay(v, i, zone, 4);
    if (!relay.trip) return {false, "no trip for an in-zone fault"};
    if (relay.trip->sample_index != 5)
        return {false, "trip consumed " +
                           std::to_string(relay.trip->sample_index + 1) +
                           " samples (expected 6)"};

    const CounterScan delayed =
        scan_counter({true, true, false, true, true, true}, 4);
    const CounterScan baseline = scan_counter({true, true, true, true}, 4);
    const bool delay_ok = delayed.trip_index && baseline.trip_index &&
                          *delayed.trip_index == 5 && *baseline.trip_index == 3;
    return {delay_ok,
            "trip after 6 samples; one out-of-zone estimate delays the trip "
            "from estimate 3 to estimate 5 (delay of exactly 2, no reset)"};
}

// ---------------------------------------------------------------------------
// 7. Long-window benefit under fifth-harmonic voltage corruption.
Outcome criterion_long_window_benefit() {
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> rd(0.5, 5.0), ld(0.02, 0.15),
        ad(50.0, 500.0), phd(0.0, kTwoPi);
    const SamplingConfig cfg{60.0, 720.0, 15};
    const double w0 = cfg.omega0();

    int wins = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        const double R = rd(rng), L = ld(rng), amp = ad(rng);
        const double ph = phd(rng), ph5 = phd(rng);
        const double v_amp = amp * std::hypot(R, w0 * L);
        std::vector<double> iv(cfg.n_samples), vv(cfg.n_samples);
        for (std::size_t k = 0; k < cfg.n_samples; ++k) {
            const double t = static_cast<double>(k) * cfg.dt();
            iv[k] = amp * std::cos(w0 * t + ph);
            vv[k] = R * amp * std::cos(w0 * t + ph) -
                    w0 * L * amp * std::sin(w0 * t + ph) +
                    0.10 * v_amp * std::cos(5.0 * w0 * t + ph5);
        }
        const SampledSignal i(cfg, std::move(iv));
        const SampledSignal v(cfg, std::move(vv));

        double rms = 0.0;
        for (std::size_t k = 0; k < 12; ++k) {
            const RLEstimate est = three_sample_estimate(v, i, k);
            const double e = est.valid
                                 ? std::hypot((est.R - R) / R, (est.L - L) / L)
                                 : 1e6;
            rms += e * e;
        }
        rms = std::sqrt(rms / 12.0);

        const RLEstimate ls = long_window_ls(v, i, 0, 12);
        const double ls_err =
            ls.valid ? std::hypot((ls.R - R) / R, (ls.L - L) / L) : 1e6;
        if (ls_err < rms) ++wins;
    }
    return {wins >= 950, "full-cycle LS beat the three-sample RMS in " +
                             std::to_string(wins) + "/1000 trials (need 950)"};
}

// ---------------------------------------------------------------------------
// 8. Frequency-response shape.
Outcome criterion_frequency_response() {
    const SamplingConfig cfg{60.0, 720.0, 14};
    const std::vector<double> grid = default_frequency_grid(60.0);
    const FrequencyResponse half =
        frequency_response(WindowSpan::half_cycle, cfg, grid);
    const FrequencyResponse full =
        frequency_response(WindowSpan::full_cycle, cfg, grid);

    const auto at = [&](const FrequencyResponse& r, double f) -> double {
        for (std::size_t j = 0; j < r.freqs.size(); ++j)
            if (std::abs(r.freqs[j] - f) < 1e-9) return r.magnitude[j];
        return -1.0;
    };
    const bool anchor = at(half, 60.0) == 1.0 && at(full, 60.0) == 1.0;
    double null_worst = 0.0;
    for (double h : {2.0, 3.0, 4.0, 5.0})
        null_worst = std::max(null_worst, at(full, h * 60.0));
    const double half_lobe = at(half, 90.0), full_lobe = at(full, 90.0);

    const bool pass =
        anchor && null_worst <= 1e-2 && half_lobe > full_lobe;
    return {pass, "anchor exactly 1; full-cycle magnitude at 2..5 f0 <= " +
                      sci(null_worst) + " (bound 1e-2); at 1.5 f0 half " +
                      sci(half_lobe) + " > full " + sci(full_lobe)};
}

// ---------------------------------------------------------------------------
// 9. Error amplification near denominator zeros (rank correlation).
Outcome criterion_error_amplification() {
    const SamplingConfig cfg{60.0, 720.0, 16};
    const double R = 1.0, L = 0.04, amp = 100.0;
    const double w0 = cfg.omega0();
    std::vector<double> iv(cfg.n_samples), vv(cfg.n_samples);
    for (std::size_t k = 0; k < cfg.n_samples; ++k) {
        const double t = static_cast<double>(k) * cfg.dt();
        iv[k] = amp * (std::cos(w0 * t) - std::exp(-t * R / L));
        vv[k] = R * amp * std::cos(w0 * t) - w0 * L * amp * std::sin(w0 * t);
    }
    const SampledSignal i(cfg, std::move(iv));
    const SampledSignal v(cfg, std::move(vv));
    const double v_amp = amp * std::hypot(R, w0 * L);

    std::mt19937_64 rng(20260809);
    std::normal_distribution<double> noise(0.0, 1e-3 * v_amp);
    const std::size_t windows = 12; // one cycle
    std::vector<double> err_rms(windows, 0.0), dens(windows);
    for (std::size_t k = 0; k < windows; ++k)
        dens[k] = std::abs(denominator(i, k));
    const int draws = 64;
    for (int d = 0; d < draws; ++d) {
        std::vector<double> noisy(v.values().begin(), v.values().end());
        for (auto& x : noisy) x += noise(rng);
        const SampledSignal vn(cfg, std::move(noisy));
        for (std::size_t k = 0; k < windows; ++k) {
            const RLEstimate est = three_sample_estimate(vn, i, k);
            const double e = est.valid
                                 ? std::hypot((est.R - R) / R, (est.L - L) / L)
                                 : 1e6;
            err_rms[k] += e * e;
        }
    }
    for (auto& e : err_rms) e = std::sqrt(e / draws);
    const double rho = spearman(err_rms, dens);
    return {rho < -0.5, "Spearman(per-window RMS error over 64 seeded noise "
                        "draws, |denominator|) = " +
                            sci(rho) + " (need < -0.5)"};
}

} // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, Outcome>> results;
    results.emplace_back("oracle recovery at 2 kHz", criterion_oracle_recovery());
    results.emplace_back("linear-signal exactness", criterion_linear_exactness());
    results.emplace_back("denominator identity and offset trace",
                         criterion_denominator());
    results.emplace_back("paired-interval harmonic cancellation",
                         criterion_harmonic_cancellation());
    results.emplace_back("error-term nulling", criterion_error_nulling());
    results.emplace_back("trip timing", criterion_trip_timing());
    results.emplace_back("long-window benefit", criterion_long_window_benefit());
    results.emplace_back("frequency response", criterion_frequency_response());
    results.emplace_back("error amplification near denominator zeros",
                         criterion_error_amplification());
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    // The runtime bound rides with the frequency-response criterion.
    if (total >= 60.0) {
        results[7].second.pass = false;
        results[7].second.detail += "; suite runtime " + sci(total) +
                                    " s exceeds the 60 s bound";
    }

    int failures = 0;
    for (std::size_t j = 0; j < results.size(); ++j) {
        const auto& [name, outcome] = results[j];
        if (!outcome.pass) ++failures;
        std::printf("[%s] criterion %zu: %s: %s\n",
                    outcome.pass ? "PASS" : "FAIL", j + 1, name.c_str(),
                    outcome.detail.c_str());
    }
    std::printf("%d/%zu criteria passed; total runtime %.2f s\n",
                static_cast<int>(results.size()) - failures, results.size(),
                total);
    return failures;
}
