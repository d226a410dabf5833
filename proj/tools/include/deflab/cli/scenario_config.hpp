#pragma once

// Scenario files are flat INI-style documents:
//
//   # comment
//   [generator]
//   E_prime = 1.1
//
// Sections: generator, impedance, constant_power, forcing, output, window.
// Frequencies are given in Hz, angles in radians, everything else per-unit
// or seconds. Unknown sections or keys are rejected.

#include <istream>
#include <optional>
#include <string>

#include "deflab/element_models.hpp"
#include "deflab/simulator.hpp"

namespace deflab::cli {

struct ScenarioConfig {
    GeneratorParams generator;
    double p_gen = 0.0;
    ImpedanceLoad impedance;
    double p_load = 0.0;
    double q_load = 0.0;
    ForcingSpec forcing;
    double frequency_hz = 0.0;
    std::string timeseries_path;
    std::optional<std::string> summary_path;
    /// Start of the mean-power fit, s. Defaults to pre_window + ramp.
    double fit_start = 0.0;

    [[nodiscard]] ScenarioElements elements() const;
    [[nodiscard]] DefOptions def_options() const;
};

/// Throws Error(Config) with "origin:line: message" on any problem.
ScenarioConfig parse_scenario(std::istream& in, const std::string& origin);
ScenarioConfig load_scenario(const std::string& path);

}  // namespace deflab::cli
