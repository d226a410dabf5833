#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "deflab/cli/commands.hpp"
#include "deflab/error.hpp"

int main(int argc, char** argv) {
    using namespace deflab;

    CLI::App app{"deflab: dissipating energy flow and passivity toolkit"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    std::string input;
    std::string element = "all";
    double fmin = 0.01;
    double fmax = 10.0;
    std::size_t npts = 50;
    double period = 0.0;
    double pre = 2.0;
    double skip = -1.0;

    auto* simulate = app.add_subcommand("simulate", "run the infinite-bus scenario and write the time-series CSV");
    simulate->add_option("--config", config, "scenario file")->required();
    simulate->add_option("--out", out, "time-series CSV path (overrides [output] timeseries)");

    auto* def = app.add_subcommand("def", "dissipating-energy trace of one element from a time-series CSV");
    def->add_option("timeseries", input, "time-series CSV written by simulate")->required();
    def->add_option("--element", element, "generator, impedance or constant_power")->required();
    def->add_option("--period", period, "forcing period, s")->required();
    def->add_option("--pre", pre, "pre-forcing window used for steady-state removal, s");
    def->add_option("--skip", skip, "start of the mean-power fit, s (default pre + 2 periods)");
    def->add_option("--out", out, "trace CSV path (default stdout)");

    auto* passivity = app.add_subcommand("passivity", "eigenvalues of K over a frequency grid and verdicts");
    passivity->add_option("--config", config, "scenario file")->required();
    passivity->add_option("--fmin", fmin, "lowest frequency, Hz");
    passivity->add_option("--fmax", fmax, "highest frequency, Hz");
    passivity->add_option("--npts", npts, "number of log-spaced points");
    passivity->add_option("--out", out, "report CSV path (default stdout)");

    auto* predict = app.add_subcommand("predict", "analytic dissipating power at the configured forcing");
    predict->add_option("--config", config, "scenario file")->required();
    predict->add_option("--element", element, "all, generator, impedance or constant_power");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kExitOk : cli::kExitConfig;
    }

    const auto optional_out = out.empty() ? std::nullopt : std::optional<std::string>(out);
    try {
        if (*simulate) {
            cli::cmd_simulate(config, optional_out, std::cout);
        } else if (*def) {
            cli::DefArgs args;
            args.timeseries_path = input;
            args.element = element;
            args.period = period;
            args.pre_window = pre;
            if (skip >= 0.0) args.fit_start = skip;
            args.out_path = optional_out;
            cli::cmd_def(args, std::cout);
        } else if (*passivity) {
            cli::cmd_passivity(config, fmin, fmax, npts, optional_out, std::cout);
        } else if (*predict) {
            cli::cmd_predict(config, element, std::cout);
        }
    } catch (const Error& e) {
        std::cerr << "deflab: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return cli::exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "deflab: " << e.what() << '\n';
        return cli::kExitNumerical;
    }
    return cli::kExitOk;
}
