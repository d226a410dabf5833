#pragma once

// Subcommand bodies for the deflab tool. Each returns its results so tests
// can drive them in-process; the executable only parses flags and maps
// exceptions to exit codes.

#include <array>
#include <optional>
#include <ostream>
#include <string>

#include "deflab/cli/scenario_config.hpp"
#include "deflab/error.hpp"
#include "deflab/passivity.hpp"

namespace deflab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Exit status for an error of the given kind.
int exit_code(ErrorKind kind);

struct ElementSummary {
    std::string name;
    double p_bar = 0.0;
    double e_star_end = 0.0;
};

struct SimulateOutcome {
    ScenarioResult result;
    std::array<ElementSummary, 3> elements;  // generator, impedance, constant_power
    double window = 0.0;
};

/// Runs the scenario, writes the time-series CSV (to out_path if given,
/// otherwise to the config's output path) and the summary to `report` and
/// the configured summary file.
SimulateOutcome cmd_simulate(const std::string& config_path,
                             const std::optional<std::string>& out_path, std::ostream& report);

/// Writes the summary table printed by `simulate`.
void write_summary(std::ostream& out, const SimulateOutcome& outcome, int precision);

struct DefArgs {
    std::string timeseries_path;
    std::string element;
    double period = 0.0;                 // s
    double pre_window = 2.0;             // s
    std::optional<double> fit_start;     // s, default pre_window + 2 periods
    std::optional<std::string> out_path; // default: write to `out`
};

DefTrace cmd_def(const DefArgs& args, std::ostream& out);

struct PassivityOutcome {
    std::vector<double> omega;
    PassivityReport generator;
    PassivityReport impedance;
    PassivityReport constant_power;
};

/// Sweeps all three configured elements over npts log-spaced frequencies.
PassivityOutcome cmd_passivity(const std::string& config_path, double fmin_hz, double fmax_hz,
                               std::size_t npts, const std::optional<std::string>& out_path,
                               std::ostream& out);

void write_passivity(std::ostream& out, const ScenarioConfig& cfg, const PassivityOutcome& outcome,
                     int precision);

struct Prediction {
    std::string name;
    double p_star = 0.0;  // Re{x^H (Y Gamma) x}, peak phasors
    double p_bar = 0.0;   // time average, p_star / 2
};

/// Analytic dissipating power of each element at the configured forcing.
/// element = "all" or one element name.
std::vector<Prediction> cmd_predict(const std::string& config_path, const std::string& element,
                                    std::ostream& out);

}  // namespace deflab::cli
