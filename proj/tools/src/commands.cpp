#include "deflab/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "deflab/cli/csv.hpp"
#include "deflab/error.hpp"

namespace deflab::cli {

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Config, path + ": cannot open for writing");
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw Error(ErrorKind::Config, path + ": write failed");
}

const char* interpretation(double p_bar, double largest) {
    if (largest == 0.0 || std::abs(p_bar) <= 1e-4 * largest) return "~0: lossless";
    return p_bar > 0.0 ? "positive: absorbs energy (passive sink)"
                       : "negative: injects energy (source-like)";
}

}  // namespace

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument:
        case ErrorKind::Schema:
        case ErrorKind::Config:
            return kExitConfig;
        default:
            return kExitNumerical;
    }
}

void write_summary(std::ostream& out, const SimulateOutcome& outcome, int precision) {
    const ForcingSpec& f = outcome.result.forcing;
    double largest = 0.0;
    for (const auto& e : outcome.elements) largest = std::max(largest, std::abs(e.p_bar));

    out << std::setprecision(precision);
    out << "# omega=" << f.omega << " rad/s, window=" << outcome.window
        << " s; positive = element absorbs oscillation energy\n";
    out << "element,P_bar,E_star_end,interpretation\n";
    for (const auto& e : outcome.elements) {
        out << e.name << ',' << e.p_bar << ',' << e.e_star_end << ','
            << interpretation(e.p_bar, largest) << '\n';
    }
}

SimulateOutcome cmd_simulate(const std::string& config_path,
                             const std::optional<std::string>& out_path, std::ostream& report) {
    const int precision = csv_precision();
    const ScenarioConfig cfg = load_scenario(config_path);

    SimulateOutcome outcome;
    outcome.result = run_scenario(cfg.forcing, cfg.elements(), cfg.p_gen);

    const DefOptions options = cfg.def_options();
    const std::array<std::pair<const char*, const ElementTimeSeries*>, 3> series{{
        {"generator", &outcome.result.generator},
        {"impedance", &outcome.result.impedance},
        {"constant_power", &outcome.result.constant_power},
    }};
    for (std::size_t i = 0; i < series.size(); ++i) {
        const DefTrace trace = def_integral(*series[i].second, options);
        outcome.elements[i] = {series[i].first, trace.p_bar.value_or(0.0), trace.e_star.back()};
        outcome.window = trace.window;
    }

    const std::string csv_path = out_path.value_or(cfg.timeseries_path);
    std::ofstream csv = open_output(csv_path);
    write_timeseries(csv, outcome.result, precision);
    finish(csv, csv_path);

    write_summary(report, outcome, precision);
    if (cfg.summary_path) {
        std::ofstream summary = open_output(*cfg.summary_path);
        write_summary(summary, outcome, precision);
        finish(summary, *cfg.summary_path);
    }
    return outcome;
}

DefTrace cmd_def(const DefArgs& args, std::ostream& out) {
    const int precision = csv_precision();
    if (!(args.period > 0.0)) throw Error(ErrorKind::InvalidArgument, "--period must be positive");

    std::ifstream in(args.timeseries_path);
    if (!in) throw Error(ErrorKind::Schema, args.timeseries_path + ": cannot open");
    const ScenarioSeries series = read_timeseries(in, args.timeseries_path);

    DefOptions options;
    options.pre_window = args.pre_window;
    options.period = args.period;
    options.fit_start = args.fit_start.value_or(args.pre_window + 2.0 * args.period);
    const DefTrace trace = def_integral(series.element(args.element), options);

    if (args.out_path) {
        std::ofstream file = open_output(*args.out_path);
        write_def_trace(file, trace, precision);
        finish(file, *args.out_path);
    } else {
        write_def_trace(out, trace, precision);
    }
    return trace;
}

void write_passivity(std::ostream& out, const ScenarioConfig& cfg, const PassivityOutcome& outcome,
                     int precision) {
    const ScenarioElements elements = cfg.elements();
    const double g_z = elements.impedance.conductance();

    out << std::setprecision(precision);
    out << "f_hz,omega,generator_lambda_min,generator_lambda_max,generator_analytic,"
           "impedance_lambda_min,impedance_lambda_max,impedance_analytic_min,impedance_analytic_max,"
           "constant_power_lambda_min,constant_power_lambda_max\n";
    for (std::size_t k = 0; k < outcome.omega.size(); ++k) {
        const double omega = outcome.omega[k];
        const EigenPair& g = outcome.generator.eigenvalues[k];
        const EigenPair& z = outcome.impedance.eigenvalues[k];
        const EigenPair& p = outcome.constant_power.eigenvalues[k];
        const double z_analytic = std::abs(g_z) / omega;
        out << omega / (2.0 * std::numbers::pi) << ',' << omega << ',' << g.min << ',' << g.max
            << ',' << generator_eig_analytic(elements.generator, omega) << ',' << z.min << ','
            << z.max << ',' << -z_analytic << ',' << z_analytic << ',' << p.min << ',' << p.max
            << '\n';
    }
    out << "# verdict generator=" << to_string(outcome.generator.verdict)
        << " impedance=" << to_string(outcome.impedance.verdict)
        << " constant_power=" << to_string(outcome.constant_power.verdict) << '\n';
    out << "# tolerance generator=" << outcome.generator.tolerance
        << " impedance=" << outcome.impedance.tolerance
        << " constant_power=" << outcome.constant_power.tolerance << '\n';
}

PassivityOutcome cmd_passivity(const std::string& config_path, double fmin_hz, double fmax_hz,
                               std::size_t npts, const std::optional<std::string>& out_path,
                               std::ostream& out) {
    const int precision = csv_precision();
    const ScenarioConfig cfg = load_scenario(config_path);
    const ScenarioElements elements = cfg.elements();

    PassivityOutcome outcome;
    outcome.omega = log_frequency_grid(fmin_hz, fmax_hz, npts);
    outcome.generator = classify(elements.generator, outcome.omega);
    outcome.impedance = classify(elements.impedance, outcome.omega);
    outcome.constant_power = classify(elements.constant_power, outcome.omega);

    if (out_path) {
        std::ofstream file = open_output(*out_path);
        write_passivity(file, cfg, outcome, precision);
        finish(file, *out_path);
    } else {
        write_passivity(out, cfg, outcome, precision);
    }
    return outcome;
}

std::vector<Prediction> cmd_predict(const std::string& config_path, const std::string& element,
                                    std::ostream& out) {
    const int precision = csv_precision();
    const ScenarioConfig cfg = load_scenario(config_path);
    const ScenarioElements elements = cfg.elements();
    const ForcingSpec& f = cfg.forcing;
    const ForcingPhasors v = forcing_phasors(f);

    const std::array<std::pair<const char*, ElementModel>, 3> models{{
        {"generator", elements.generator},
        {"impedance", elements.impedance},
        {"constant_power", elements.constant_power},
    }};
    if (element != "all" && std::none_of(models.begin(), models.end(),
                                         [&](const auto& m) { return element == m.first; })) {
        throw Error(ErrorKind::InvalidArgument, "unknown element '" + element + "'");
    }

    std::vector<Prediction> predictions;
    out << std::setprecision(precision);
    out << "# omega=" << f.omega << " rad/s; P_star = Re{x^H Y Gamma x} with peak phasors, "
           "P_bar = P_star/2 is the time average\n";
    out << "element,P_star,P_bar\n";
    for (const auto& [name, model] : models) {
        if (element != "all" && element != name) continue;
        const double p_star = dissipating_power(frf(model, f.omega), f.omega, v.v_r, v.v_i);
        predictions.push_back({name, p_star, time_averaged(p_star)});
        out << name << ',' << p_star << ',' << time_averaged(p_star) << '\n';
    }
    if (element == "all" || element == "impedance") {
        const double closed = resistor_power_analytic(elements.impedance.conductance(), f.omega,
                                                      f.amp_r, f.amp_i, f.theta_r - f.theta_i);
        out << "# impedance closed form 2 G omega |V_r||V_i| sin(theta_r - theta_i): P_star="
            << closed << " P_bar=" << time_averaged(closed) << '\n';
    }
    return predictions;
}

}  // namespace deflab::cli
