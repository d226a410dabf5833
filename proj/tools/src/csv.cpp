#include "deflab/cli/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iomanip>

#include "deflab/error.hpp"

namespace deflab::cli {

namespace {

constexpr std::size_t kColumns = 9;

[[noreturn]] void schema_error(const std::string& origin, std::size_t line, const std::string& msg) {
    throw Error(ErrorKind::Schema, origin + ":" + std::to_string(line) + ": " + msg);
}

void push(ElementTimeSeries& ts, double t, double v_r, double v_i, double i_r, double i_i) {
    ts.t.push_back(t);
    ts.v_r.push_back(v_r);
    ts.v_i.push_back(v_i);
    ts.i_r.push_back(i_r);
    ts.i_i.push_back(i_i);
}

}  // namespace

int csv_precision() {
    const char* env = std::getenv("DEFLAB_PRECISION");
    if (env == nullptr || *env == '\0') return 17;
    const std::string_view text(env);
    int digits = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), digits);
    if (ec != std::errc() || ptr != text.data() + text.size() || digits < 1 || digits > 17) {
        throw Error(ErrorKind::Config, "DEFLAB_PRECISION must be an integer in 1..17");
    }
    return digits;
}

const ElementTimeSeries& ScenarioSeries::element(std::string_view name) const {
    if (name == "generator") return generator;
    if (name == "impedance") return impedance;
    if (name == "constant_power") return constant_power;
    throw Error(ErrorKind::InvalidArgument,
                "unknown element '" + std::string(name) +
                    "' (expected generator, impedance or constant_power)");
}

void write_timeseries(std::ostream& out, const ScenarioResult& result, int precision) {
    out << std::setprecision(precision) << kTimeSeriesHeader << '\n';
    const ElementTimeSeries& g = result.generator;
    const ElementTimeSeries& z = result.impedance;
    const ElementTimeSeries& p = result.constant_power;
    for (std::size_t k = 0; k < g.size(); ++k) {
        out << g.t[k] << ',' << g.v_r[k] << ',' << g.v_i[k] << ',' << g.i_r[k] << ',' << g.i_i[k]
            << ',' << z.i_r[k] << ',' << z.i_i[k] << ',' << p.i_r[k] << ',' << p.i_i[k] << '\n';
    }
}

ScenarioSeries read_timeseries(std::istream& in, const std::string& origin) {
    std::string line;
    if (!std::getline(in, line)) schema_error(origin, 1, "empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTimeSeriesHeader) {
        schema_error(origin, 1, "expected header '" + std::string(kTimeSeriesHeader) + "'");
    }

    ScenarioSeries series;
    std::size_t line_no = 1;
    std::array<double, kColumns> row{};
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) schema_error(origin, line_no, "blank line");

        const char* cursor = line.data();
        const char* const end = line.data() + line.size();
        for (std::size_t c = 0; c < kColumns; ++c) {
            const auto [ptr, ec] = std::from_chars(cursor, end, row[c]);
            if (ec != std::errc() || !std::isfinite(row[c])) {
                schema_error(origin, line_no, "column " + std::to_string(c + 1) + " is not a number");
            }
            cursor = ptr;
            if (c + 1 < kColumns) {
                if (cursor == end || *cursor != ',') {
                    schema_error(origin, line_no,
                                 "expected " + std::to_string(kColumns) + " columns, got " +
                                     std::to_string(c + 1));
                }
                ++cursor;
            }
        }
        if (cursor != end) schema_error(origin, line_no, "trailing data after column 9");

        push(series.generator, row[0], row[1], row[2], row[3], row[4]);
        push(series.impedance, row[0], row[1], row[2], row[5], row[6]);
        push(series.constant_power, row[0], row[1], row[2], row[7], row[8]);
    }
    if (series.generator.size() < 3) schema_error(origin, line_no, "fewer than 3 samples");
    try {
        series.generator.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::Schema, origin + ": " + e.what());
    }
    return series;
}

void write_def_trace(std::ostream& out, const DefTrace& trace, int precision) {
    out << std::setprecision(precision);
    if (trace.p_bar) out << "# P_bar=" << *trace.p_bar << " window=" << trace.window << '\n';
    out << kDefTraceHeader << '\n';
    for (std::size_t k = 0; k < trace.t.size(); ++k) {
        out << trace.t[k] << ',' << trace.e_star[k] << '\n';
    }
}

}  // namespace deflab::cli
