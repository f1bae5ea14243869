#ifndef RELAYLAB_SIGNALS_HPP
#define RELAYLAB_SIGNALS_HPP

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace relaylab {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform sampling grid. dt is always derived from fs so the two can
/// never disagree.
struct SamplingConfig {
    double f0 = 60.0;          ///< fundamental frequency (Hz)
    double fs = 720.0;         ///< sampling frequency (Hz)
    std::size_t n_samples = 0; ///< number of samples carried by a signal

    double dt() const { return 1.0 / fs; }
    double omega0() const { return kTwoPi * f0; }
    double samples_per_cycle() const { return fs / f0; }

    /// Throws std::invalid_argument unless f0 > 0, fs > 0, at least one
    /// sample, and fs/f0 >= 3 (the three-sample window must fit in a cycle).
    void validate() const;

    bool same_grid(const SamplingConfig& other) const {
        return f0 == other.f0 && fs == other.fs && n_samples == other.n_samples;
    }
};

/// One cosine term C * cos(order * w0 * t + phase).
struct HarmonicTerm {
    int order = 1;
    double amplitude = 0.0;
    double phase = 0.0; // radians
};

/// DC level plus a sum of harmonic cosines. Evaluation needs the
/// fundamental angular frequency, which lives in SamplingConfig, so it is
/// passed per call rather than stored.
class FourierSeries {
public:
    FourierSeries() = default;
    explicit FourierSeries(double dc) : dc_(dc) {}
    FourierSeries(double dc, std::vector<HarmonicTerm> terms);

    double dc() const { return dc_; }
    const std::vector<HarmonicTerm>& terms() const { return terms_; }

    double value(double t, double omega0) const;
    double derivative(double t, double omega0) const;

    /// Pointwise sum of two series; same-order terms are combined by
    /// phasor addition so evaluation of the result equals the sum of the
    /// evaluations.
    FourierSeries merged(const FourierSeries& other) const;

private:
    double dc_ = 0.0;
    std::vector<HarmonicTerm> terms_;
};

/// amplitude * exp(-(t - t0)/tau), the homogeneous solution of the R-L
/// line equation when tau = L/R.
struct ExponentialTerm {
    double amplitude = 0.0;
    double tau = 1.0; // seconds, > 0
    double t0 = 0.0;

    double value(double t) const;
    double derivative(double t) const;
    void validate() const;
};

/// Faulted-line scenario: steady-state sinusoid of `amplitude` amperes
/// whose instantaneous phase at the inception time t0 is
/// inception_angle + phase, plus (optionally) the decaying offset that
/// freezes the sinusoid's inception value so the current starts at zero
/// when phase == 0.
struct FaultScenario {
    double R = 1.0;              ///< line resistance (ohm), > 0
    double L = 0.04;             ///< line inductance (henry), > 0
    double amplitude = 1.0;      ///< steady-state current amplitude (A)
    double inception_angle = 0.0;///< w0 * t0 (radians)
    bool offset_enabled = true;
    double t0 = 0.0;             ///< fault inception time (s)
    double phase = 0.0;          ///< extra steady-state phase (radians)

    double tau() const { return L / R; }
    void validate() const;
};

/// Immutable uniformly sampled signal; sample k sits at t_start + k*dt.
class SampledSignal {
public:
    SampledSignal(SamplingConfig config, std::vector<double> values,
                  double t_start = 0.0);

    const SamplingConfig& config() const { return config_; }
    std::span<const double> values() const { return values_; }
    double t_start() const { return t_start_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t k) const { return values_[k]; }
    double time_at(std::size_t k) const {
        return t_start_ + static_cast<double>(k) * config_.dt();
    }

    template <class Fn>
    static SampledSignal sample(const SamplingConfig& config, double t_start,
                                Fn&& fn) {
        config.validate();
        std::vector<double> v(config.n_samples);
        const double dt = config.dt();
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] = fn(t_start + static_cast<double>(k) * dt);
        return SampledSignal(config, std::move(v), t_start);
    }

private:
    SamplingConfig config_;
    std::vector<double> values_;
    double t_start_;
};

/// Closed-form current: a Fourier series in t - t_ref plus decaying
/// exponentials. Keeping the description analytic makes the line-voltage
/// oracle exact (no numeric differencing anywhere).
class AnalyticCurrent {
public:
    AnalyticCurrent() = default;
    explicit AnalyticCurrent(FourierSeries series, double t_ref = 0.0,
                             std::vector<ExponentialTerm> exponentials = {});

    static AnalyticCurrent from_scenario(const FaultScenario& scn);

    const FourierSeries& series() const { return series_; }
    double t_ref() const { return t_ref_; }
    const std::vector<ExponentialTerm>& exponentials() const {
        return exponentials_;
    }

    double value(double t, double omega0) const;
    double derivative(double t, double omega0) const;

private:
    FourierSeries series_;
    double t_ref_ = 0.0;
    std::vector<ExponentialTerm> exponentials_;
};

/// Additive measurement-error model. The deterministic parts are Fourier
/// series (evaluated on the host signal's grid in absolute time); the white
/// noise parts are drawn from a generator seeded explicitly so every run
/// is reproducible.
struct ErrorModel {
    std::optional<FourierSeries> current_error;
    std::optional<FourierSeries> voltage_error;
    double current_noise_sigma = 0.0; // std-dev, signal units
    double voltage_noise_sigma = 0.0;
    std::uint64_t seed = 0;

    bool has_noise() const {
        return current_noise_sigma > 0.0 || voltage_noise_sigma > 0.0;
    }
};

/// Samples c0 + sum C_m cos(m*w0*(t) + theta_m) on the grid.
SampledSignal synth_fourier(const FourierSeries& series,
                            const SamplingConfig& config, double t_start = 0.0);

/// Faulted-line current sampled from the inception time onward.
SampledSignal fault_current(const FaultScenario& scn,
                            const SamplingConfig& config);

/// Exact line voltage v = R*i + L*di/dt for an analytic current. This is
/// the consistency oracle for every estimator in the library, so the
/// derivative is always closed-form.
SampledSignal line_voltage(const AnalyticCurrent& current, double R, double L,
                           const SamplingConfig& config, double t_start = 0.0);
SampledSignal line_voltage(const FourierSeries& current, double R, double L,
                           const SamplingConfig& config, double t_start = 0.0);

/// Fourier series of R*i + L*di/dt for a series current: each harmonic is
/// scaled by |R + j*m*w0*L| and advanced by atan2(m*w0*L, R).
FourierSeries line_response(const FourierSeries& current, double R, double L,
                            double omega0);

/// Pointwise sum; the input signal is left untouched.
SampledSignal add_measurement_error(const SampledSignal& s,
                                    std::span<const double> error);
SampledSignal add_measurement_error(const SampledSignal& s,
                                    const SampledSignal& error);

} // namespace relaylab

#endif
