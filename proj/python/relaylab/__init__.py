"""Differential-equation relay laboratory.

Thin Python facade over the C++ core: waveform synthesis, R-L line
parameter estimation, trip counting logic and the error / frequency
response studies.
"""

from relaylab._core import (  # noqa: F401
    AnalyticCurrent,
    AveragedEstimate,
    CounterScan,
    CounterState,
    DenominatorTrace,
    ExponentialTerm,
    FaultScenario,
    FourierSeries,
    FrequencyResponse,
    HarmonicTerm,
    IntervalPair,
    PairIntegrals,
    PolygonZone,
    RLEstimate,
    RectZone,
    RelayResult,
    SampledSignal,
    SamplingConfig,
    TripEvent,
    WindowSpan,
    ZoneCharacteristic,
    add_measurement_error,
    averaged_estimates,
    counter_step,
    default_frequency_grid,
    denominator,
    denominator_trace,
    effective_error,
    estimate_series,
    fault_current,
    frequency_response,
    harmonic_pair_integrals,
    line_response,
    line_voltage,
    long_window_ls,
    reject_harmonic,
    run_cli,
    run_relay,
    scan_counter,
    synth_fourier,
    three_sample_estimate,
    trapz,
    zone_contains,
)

__version__ = "0.1.0"
