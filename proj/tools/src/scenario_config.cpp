#include "deflab/cli/scenario_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <string_view>
#include <vector>

#include "deflab/error.hpp"

namespace deflab::cli {

namespace {

struct KeySpec {
    std::string_view name;
    bool required;
};

const std::map<std::string_view, std::vector<KeySpec>, std::less<>>& schema() {
    static const std::map<std::string_view, std::vector<KeySpec>, std::less<>> table{
        {"generator", {{"E_prime", true}, {"Xd_prime", true}, {"M", true}, {"D", true}, {"P_g", true}}},
        // either G_z/B_z or R_z/X_z; checked separately
        {"impedance", {{"G_z", false}, {"B_z", false}, {"R_z", false}, {"X_z", false}}},
        {"constant_power", {{"P", true}, {"Q", true}}},
        {"forcing",
         {{"frequency_hz", true}, {"amp_r", true}, {"amp_i", true}, {"theta_r", true},
          {"theta_i", true}, {"V_r0", true}, {"V_i0", true}, {"duration", true},
          {"step", false}, {"ramp", false}, {"pre_window", false}}},
        {"output", {{"timeseries", true}, {"summary", false}}},
        {"window", {{"fit_start", false}}},
    };
    return table;
}

struct Entry {
    std::string value;
    int line = 0;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

class Document {
public:
    Document(std::istream& in, std::string origin) : origin_(std::move(origin)) {
        std::string raw;
        std::string section;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string_view line = raw;
            if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
                line = line.substr(0, hash);
            }
            line = trim(line);
            if (line.empty()) continue;

            if (line.front() == '[') {
                if (line.back() != ']') fail(line_no, "malformed section header");
                section = std::string(trim(line.substr(1, line.size() - 2)));
                if (!schema().contains(section)) fail(line_no, "unknown section [" + section + "]");
                if (!sections_.insert(section).second) {
                    fail(line_no, "duplicate section [" + section + "]");
                }
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) fail(line_no, "expected key = value");
            if (section.empty()) fail(line_no, "key outside of any section");

            const std::string key(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            const auto& keys = schema().find(section)->second;
            const bool known = std::any_of(keys.begin(), keys.end(),
                                           [&](const KeySpec& k) { return k.name == key; });
            if (!known) fail(line_no, "unknown key '" + key + "' in [" + section + "]");
            if (value.empty()) fail(line_no, "empty value for '" + key + "'");
            const std::string full = section + "." + key;
            if (entries_.contains(full)) fail(line_no, "duplicate key '" + key + "'");
            entries_[full] = {value, line_no};
        }
        for (const auto& [name, keys] : schema()) {
            for (const auto& k : keys) {
                if (k.required && !has(std::string(name) + "." + std::string(k.name))) {
                    fail(line_no, "missing required key '" + std::string(k.name) + "' in [" +
                                      std::string(name) + "]");
                }
            }
        }
    }

    [[nodiscard]] bool has(const std::string& key) const { return entries_.contains(key); }

    [[nodiscard]] double number(const std::string& key) const {
        const Entry& e = entries_.at(key);
        double out = 0.0;
        const char* begin = e.value.data();
        const char* end = begin + e.value.size();
        const auto [ptr, ec] = std::from_chars(begin, end, out);
        if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
            fail(e.line, "'" + key + "' is not a finite number: " + e.value);
        }
        return out;
    }

    [[nodiscard]] std::optional<double> optional_number(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return number(key);
    }

    [[nodiscard]] const std::string& text(const std::string& key) const {
        return entries_.at(key).value;
    }

    [[nodiscard]] int line_of(const std::string& key) const {
        return has(key) ? entries_.at(key).line : 0;
    }

    [[noreturn]] void fail(int line, const std::string& message) const {
        throw Error(ErrorKind::Config, origin_ + ":" + std::to_string(line) + ": " + message);
    }

private:
    std::string origin_;
    std::set<std::string> sections_;
    std::map<std::string, Entry> entries_;
};

}  // namespace

ScenarioElements ScenarioConfig::elements() const {
    return make_elements(forcing, generator, p_gen, impedance, p_load, q_load);
}

DefOptions ScenarioConfig::def_options() const {
    DefOptions options = deflab::def_options(forcing);
    options.fit_start = fit_start;
    return options;
}

ScenarioConfig parse_scenario(std::istream& in, const std::string& origin) {
    const Document doc(in, origin);
    ScenarioConfig cfg;

    cfg.generator.e_prime = doc.number("generator.E_prime");
    cfg.generator.xd_prime = doc.number("generator.Xd_prime");
    cfg.generator.inertia_m = doc.number("generator.M");
    cfg.generator.damping = doc.number("generator.D");
    cfg.p_gen = doc.number("generator.P_g");

    const bool admittance = doc.has("impedance.G_z") || doc.has("impedance.B_z");
    const bool impedance = doc.has("impedance.R_z") || doc.has("impedance.X_z");
    const int z_line = std::max({doc.line_of("impedance.G_z"), doc.line_of("impedance.B_z"),
                                 doc.line_of("impedance.R_z"), doc.line_of("impedance.X_z")});
    if (admittance == impedance) {
        doc.fail(z_line, "[impedance] needs exactly one of (G_z, B_z) or (R_z, X_z)");
    }
    try {
        if (admittance) {
            if (!doc.has("impedance.G_z") || !doc.has("impedance.B_z")) {
                doc.fail(z_line, "[impedance] needs both G_z and B_z");
            }
            cfg.impedance = ImpedanceLoad::from_admittance(doc.number("impedance.G_z"),
                                                           doc.number("impedance.B_z"));
        } else {
            if (!doc.has("impedance.R_z") || !doc.has("impedance.X_z")) {
                doc.fail(z_line, "[impedance] needs both R_z and X_z");
            }
            cfg.impedance = ImpedanceLoad::from_impedance(doc.number("impedance.R_z"),
                                                          doc.number("impedance.X_z"));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Config) throw;
        doc.fail(z_line, e.what());
    }

    cfg.p_load = doc.number("constant_power.P");
    cfg.q_load = doc.number("constant_power.Q");

    ForcingSpec& f = cfg.forcing;
    cfg.frequency_hz = doc.number("forcing.frequency_hz");
    if (!(cfg.frequency_hz > 0.0)) {
        doc.fail(doc.line_of("forcing.frequency_hz"), "frequency_hz must be positive");
    }
    f.omega = 2.0 * std::numbers::pi * cfg.frequency_hz;
    f.amp_r = doc.number("forcing.amp_r");
    f.amp_i = doc.number("forcing.amp_i");
    f.theta_r = doc.number("forcing.theta_r");
    f.theta_i = doc.number("forcing.theta_i");
    f.v_r0 = doc.number("forcing.V_r0");
    f.v_i0 = doc.number("forcing.V_i0");
    f.duration = doc.number("forcing.duration");
    f.step = doc.optional_number("forcing.step").value_or(default_step(f.omega));
    f.ramp = doc.optional_number("forcing.ramp").value_or(2.0 * f.period());
    f.pre_window = doc.optional_number("forcing.pre_window").value_or(2.0);
    try {
        f.validate();
    } catch (const Error& e) {
        doc.fail(doc.line_of("forcing.frequency_hz"), std::string("[forcing] ") + e.what());
    }

    cfg.timeseries_path = doc.text("output.timeseries");
    if (doc.has("output.summary")) cfg.summary_path = doc.text("output.summary");
    cfg.fit_start = doc.optional_number("window.fit_start").value_or(f.pre_window + f.ramp);

    try {
        (void)cfg.elements();
    } catch (const Error& e) {
        doc.fail(doc.line_of("generator.P_g"), e.what());
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Config, path + ": cannot open scenario file");
    return parse_scenario(in, path);
}

}  // namespace deflab::cli
