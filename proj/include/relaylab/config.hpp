#ifndef RELAYLAB_CONFIG_HPP
#define RELAYLAB_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "relaylab/analysis.hpp"
#include "relaylab/signals.hpp"
#include "relaylab/trip.hpp"

namespace relaylab {

/// Configuration problem (unknown key, bad type, violated invariant).
/// The message carries the offending key path.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EstimatorChoice {
    enum class Kind { short_window, long_window, averaged };
    Kind kind = Kind::short_window;
    std::size_t param = 0; ///< rows for long_window, count for averaged
};

struct AnalysisOptions {
    std::optional<double> f_max;  ///< sweep top (Hz); default 6*f0
    std::optional<double> f_step; ///< sweep step (Hz); default f0/20
    std::optional<std::size_t> trace_cycles; ///< denominator-trace span; default: use n_samples
};

/// Everything a CLI run needs. Sections beyond `sampling` and `scenario`
/// are optional in the file; each command checks for what it requires.
struct ScenarioConfig {
    SamplingConfig sampling;
    FaultScenario scenario;
    ErrorModel errors;
    std::optional<ZoneCharacteristic> zone;
    EstimatorChoice estimator;
    int trip_threshold = 4;
    AnalysisOptions analysis;
    bool seed_given = false;
};

/// Parses and validates a JSON config. Unknown keys anywhere are rejected
/// with their full path.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

} // namespace relaylab

#endif
