#ifndef RELAYLAB_COMMANDS_HPP
#define RELAYLAB_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "relaylab/config.hpp"

namespace relaylab {

/// Clean and measured waveform set for a scenario. Measured signals carry
/// the configured deterministic error series plus seeded white noise.
struct Waveforms {
    SampledSignal i;
    SampledSignal v;
    SampledSignal i_measured;
    SampledSignal v_measured;
};

Waveforms build_waveforms(const ScenarioConfig& cfg);

/// CSV emitters behind the CLI subcommands. Each throws ConfigError for
/// configuration problems and std::runtime_error for I/O or numerical
/// failures. The trip summary, when one fires, goes to `log`.
void cmd_simulate(const ScenarioConfig& cfg, const std::string& out_path);
void cmd_estimate(const ScenarioConfig& cfg, const std::string& out_path,
                  std::ostream& log);
void cmd_freqresp(const ScenarioConfig& cfg, const std::string& out_path);
void cmd_denominator(const ScenarioConfig& cfg, const std::string& out_path);

/// Full command-line front end (subcommand + flags). Returns the process
/// exit code: 0 success, 2 configuration error, 3 runtime failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace relaylab

#endif
