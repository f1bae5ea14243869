#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <iostream>

#include "relaylab/analysis.hpp"
#include "relaylab/commands.hpp"
#include "relaylab/estimators.hpp"
#include "relaylab/quadrature.hpp"
#include "relaylab/signals.hpp"
#include "relaylab/trip.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace relaylab;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Differential-equation relay laboratory (C++ core)";

    py::class_<SamplingConfig>(m, "SamplingConfig")
        .def(py::init([](double f0, double fs, std::size_t n_samples) {
                 SamplingConfig cfg{f0, fs, n_samples};
                 cfg.validate();
                 return cfg;
             }),
             "f0"_a = 60.0, "fs"_a = 720.0, "n_samples"_a)
        .def_readonly("f0", &SamplingConfig::f0)
        .def_readonly("fs", &SamplingConfig::fs)
        .def_readonly("n_samples", &SamplingConfig::n_samples)
        .def_property_readonly("dt", &SamplingConfig::dt)
        .def_property_readonly("omega0", &SamplingConfig::omega0)
        .def_property_readonly("samples_per_cycle",
                               &SamplingConfig::samples_per_cycle);

    py::class_<HarmonicTerm>(m, "HarmonicTerm")
        .def(py::init<int, double, double>(), "order"_a, "amplitude"_a,
             "phase"_a = 0.0)
        .def_readonly("order", &HarmonicTerm::order)
        .def_readonly("amplitude", &HarmonicTerm::amplitude)
        .def_readonly("phase", &HarmonicTerm::phase);

    py::class_<FourierSeries>(m, "FourierSeries")
        .def(py::init<double, std::vector<HarmonicTerm>>(), "dc"_a = 0.0,
             "terms"_a = std::vector<HarmonicTerm>{})
        .def_property_readonly("dc", &FourierSeries::dc)
        .def_property_readonly("terms", &FourierSeries::terms)
        .def("value", &FourierSeries::value, "t"_a, "omega0"_a)
        .def("derivative", &FourierSeries::derivative, "t"_a, "omega0"_a)
        .def("merged", &FourierSeries::merged, "other"_a);

    py::class_<ExponentialTerm>(m, "ExponentialTerm")
        .def(py::init([](double amplitude, double tau, double t0) {
                 ExponentialTerm term{amplitude, tau, t0};
                 term.validate();
                 return term;
             }),
             "amplitude"_a, "tau"_a, "t0"_a = 0.0)
        .def_readonly("amplitude", &ExponentialTerm::amplitude)
        .def_readonly("tau", &ExponentialTerm::tau)
        .def_readonly("t0", &ExponentialTerm::t0)
        .def("value", &ExponentialTerm::value, "t"_a)
        .def("derivative", &ExponentialTerm::derivative, "t"_a);

    py::class_<FaultScenario>(m, "FaultScenario")
        .def(py::init([](double R, double L, double amplitude,
                         double inception_angle, bool offset_enabled, double t0,
                         double phase) {
                 FaultScenario scn{R, L, amplitude, inception_angle,
                                   offset_enabled, t0, phase};
                 scn.validate();
                 return scn;
             }),
             "R"_a, "L"_a, "amplitude"_a = 1.0, "inception_angle"_a = 0.0,
             "offset_enabled"_a = true, "t0"_a = 0.0, "phase"_a = 0.0)
        .def_readonly("R", &FaultScenario::R)
        .def_readonly("L", &FaultScenario::L)
        .def_readonly("amplitude", &FaultScenario::amplitude)
        .def_readonly("inception_angle", &FaultScenario::inception_angle)
        .def_readonly("offset_enabled", &FaultScenario::offset_enabled)
        .def_readonly("t0", &FaultScenario::t0)
        .def_readonly("phase", &FaultScenario::phase)
        .def_property_readonly("tau", &FaultScenario::tau);

    py::class_<SampledSignal>(m, "SampledSignal")
        .def(py::init<SamplingConfig, std::vector<double>, double>(), "config"_a,
             "values"_a, "t_start"_a = 0.0)
        .def_property_readonly("config", &SampledSignal::config)
        .def_property_readonly("values",
                               [](const SampledSignal& s) {
                                   const auto vals = s.values();
                                   return std::vector<double>(vals.begin(),
                                                              vals.end());
                               })
        .def_property_readonly("t_start", &SampledSignal::t_start)
        .def("time_at", &SampledSignal::time_at, "k"_a)
        .def("__len__", &SampledSignal::size)
        .def("__getitem__", [](const SampledSignal& s, std::size_t k) {
            if (k >= s.size()) throw py::index_error();
            return s[k];
        });

    py::class_<AnalyticCurrent>(m, "AnalyticCurrent")
        .def(py::init<FourierSeries, double, std::vector<ExponentialTerm>>(),
             "series"_a, "t_ref"_a = 0.0,
             "exponentials"_a = std::vector<ExponentialTerm>{})
        .def_static("from_scenario", &AnalyticCurrent::from_scenario, "scn"_a)
        .def("value", &AnalyticCurrent::value, "t"_a, "omega0"_a)
        .def("derivative", &AnalyticCurrent::derivative, "t"_a, "omega0"_a);

    m.def("synth_fourier", &synth_fourier, "series"_a, "config"_a,
          "t_start"_a = 0.0);
    m.def("fault_current", &fault_current, "scenario"_a, "config"_a);
    m.def("line_voltage",
          py::overload_cast<const AnalyticCurrent&, double, double,
                            const SamplingConfig&, double>(&line_voltage),
          "current"_a, "R"_a, "L"_a, "config"_a, "t_start"_a = 0.0);
    m.def("line_voltage",
          py::overload_cast<const FourierSeries&, double, double,
                            const SamplingConfig&, double>(&line_voltage),
          "current"_a, "R"_a, "L"_a, "config"_a, "t_start"_a = 0.0);
    m.def("line_response", &line_response, "current"_a, "R"_a, "L"_a,
          "omega0"_a);
    m.def("add_measurement_error",
          py::overload_cast<const SampledSignal&, const SampledSignal&>(
              &add_measurement_error),
          "signal"_a, "error"_a);
    m.def(
        "add_measurement_error",
        [](const SampledSignal& s, const std::vector<double>& e) {
            return add_measurement_error(s, std::span<const double>(e));
        },
        "signal"_a, "error"_a);

    m.def("trapz", &trapz, "signal"_a, "k_start"_a, "k_end"_a);

    py::class_<IntervalPair>(m, "IntervalPair")
        .def(py::init([](int harmonic, double alpha) {
                 IntervalPair pair{harmonic, alpha};
                 pair.validate();
                 return pair;
             }),
             "harmonic"_a, "alpha"_a = std::numbers::pi / 3.0)
        .def_readonly("harmonic", &IntervalPair::harmonic)
        .def_readonly("alpha", &IntervalPair::alpha)
        .def("window_length", &IntervalPair::window_length, "omega0"_a)
        .def("second_offset", &IntervalPair::second_offset, "omega0"_a);

    py::class_<PairIntegrals>(m, "PairIntegrals")
        .def_readonly("first", &PairIntegrals::first)
        .def_readonly("second", &PairIntegrals::second)
        .def("sum", &PairIntegrals::sum);

    m.def("harmonic_pair_integrals",
          py::overload_cast<const FourierSeries&, const IntervalPair&,
                            const SamplingConfig&>(&harmonic_pair_integrals),
          "series"_a, "pair"_a, "config"_a);
    m.def("harmonic_pair_integrals",
          py::overload_cast<const SampledSignal&, const IntervalPair&>(
              &harmonic_pair_integrals),
          "signal"_a, "pair"_a);
    m.def("reject_harmonic",
          py::overload_cast<const FourierSeries&, const IntervalPair&,
                            const SamplingConfig&>(&reject_harmonic),
          "series"_a, "pair"_a, "config"_a);
    m.def("reject_harmonic",
          py::overload_cast<const SampledSignal&, const IntervalPair&>(
              &reject_harmonic),
          "signal"_a, "pair"_a);

    py::class_<RLEstimate>(m, "RLEstimate")
        .def_readonly("R", &RLEstimate::R)
        .def_readonly("L", &RLEstimate::L)
        .def_readonly("denominator", &RLEstimate::denominator)
        .def_readonly("k", &RLEstimate::k)
        .def_readonly("valid", &RLEstimate::valid)
        .def("__repr__", [](const RLEstimate& est) {
            return "RLEstimate(R=" + std::to_string(est.R) +
                   ", L=" + std::to_string(est.L) +
                   ", valid=" + (est.valid ? std::string("True") : "False") +
                   ")";
        });

    py::class_<AveragedEstimate>(m, "AveragedEstimate")
        .def_readonly("estimate", &AveragedEstimate::estimate)
        .def_readonly("n_used", &AveragedEstimate::n_used)
        .def_readonly("n_invalid", &AveragedEstimate::n_invalid);

    m.def("denominator", &denominator, "i"_a, "k"_a);
    m.def("three_sample_estimate", &three_sample_estimate, "v"_a, "i"_a, "k"_a);
    m.def("long_window_ls", &long_window_ls, "v"_a, "i"_a, "k"_a, "rows"_a);
    m.def("averaged_estimates", &averaged_estimates, "v"_a, "i"_a, "k"_a,
          "count"_a);
    m.def("estimate_series", &estimate_series, "v"_a, "i"_a);

    py::class_<RectZone>(m, "RectZone")
        .def(py::init([](double r_min, double r_max, double l_min, double l_max) {
                 RectZone rect{r_min, r_max, l_min, l_max};
                 rect.validate();
                 return rect;
             }),
             "r_min"_a, "r_max"_a, "l_min"_a, "l_max"_a)
        .def("contains", &RectZone::contains, "r"_a, "l"_a);

    py::class_<PolygonZone>(m, "PolygonZone")
        .def(py::init<std::vector<std::array<double, 2>>>(), "vertices"_a)
        .def("contains", &PolygonZone::contains, "r"_a, "l"_a);

    py::class_<ZoneCharacteristic>(m, "ZoneCharacteristic")
        .def(py::init<RectZone>(), "rect"_a)
        .def(py::init<PolygonZone>(), "polygon"_a)
        .def("contains", &ZoneCharacteristic::contains, "r"_a, "l"_a);
    py::implicitly_convertible<RectZone, ZoneCharacteristic>();
    py::implicitly_convertible<PolygonZone, ZoneCharacteristic>();

    m.def("zone_contains", &zone_contains, "zone"_a, "estimate"_a);

    py::class_<CounterState>(m, "CounterState")
        .def(py::init<int, int>(), "count"_a = 0, "threshold"_a = 4)
        .def_readonly("count", &CounterState::count)
        .def_readonly("threshold", &CounterState::threshold);

    m.def("counter_step", &counter_step, "state"_a, "inside"_a);
    m.def("scan_counter", &scan_counter, "inside"_a, "threshold"_a);

    py::class_<TripEvent>(m, "TripEvent")
        .def_readonly("sample_index", &TripEvent::sample_index)
        .def_readonly("time", &TripEvent::time);

    py::class_<CounterScan>(m, "CounterScan")
        .def_readonly("trace", &CounterScan::trace)
        .def_readonly("trip_index", &CounterScan::trip_index);

    py::class_<RelayResult>(m, "RelayResult")
        .def_readonly("trip", &RelayResult::trip)
        .def_readonly("counter_trace", &RelayResult::counter_trace)
        .def_readonly("estimates", &RelayResult::estimates);

    m.def("run_relay", &run_relay, "v"_a, "i"_a, "zone"_a, "threshold"_a = 4);

    py::enum_<WindowSpan>(m, "WindowSpan")
        .value("half_cycle", WindowSpan::half_cycle)
        .value("full_cycle", WindowSpan::full_cycle);

    py::class_<FrequencyResponse>(m, "FrequencyResponse")
        .def_readonly("freqs", &FrequencyResponse::freqs)
        .def_readonly("magnitude", &FrequencyResponse::magnitude)
        .def_readonly("window", &FrequencyResponse::window)
        .def_readonly("samples_per_cycle", &FrequencyResponse::samples_per_cycle);

    m.def("default_frequency_grid", &default_frequency_grid, "f0"_a);
    m.def(
        "frequency_response",
        [](WindowSpan window, const SamplingConfig& config,
           const std::vector<double>& grid) {
            return frequency_response(window, config, grid);
        },
        "window"_a, "config"_a, "freq_grid"_a);

    m.def("effective_error",
          py::overload_cast<const FourierSeries&, const FourierSeries&, double,
                            double, const SamplingConfig&, double>(
              &effective_error),
          "eps_i"_a, "eps_v"_a, "R"_a, "L"_a, "config"_a, "t_start"_a = 0.0);
    m.def("effective_error",
          py::overload_cast<const AnalyticCurrent&, const AnalyticCurrent&,
                            double, double, const SamplingConfig&, double>(
              &effective_error),
          "eps_i"_a, "eps_v"_a, "R"_a, "L"_a, "config"_a, "t_start"_a = 0.0);

    py::class_<DenominatorTrace>(m, "DenominatorTrace")
        .def_readonly("trace", &DenominatorTrace::trace)
        .def_readonly("nominal", &DenominatorTrace::nominal)
        .def_readonly("fit_amplitude", &DenominatorTrace::fit_amplitude)
        .def_readonly("fit_phase", &DenominatorTrace::fit_phase);

    m.def("denominator_trace", &denominator_trace, "scenario"_a, "config"_a,
          "expected_tau"_a = std::optional<double>{});

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            return run_cli(args, std::cout, std::cerr);
        },
        "args"_a, "Run a CLI subcommand in-process; returns the exit code.");
}
