#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "deflab/def_engine.hpp"
#include "deflab/simulator.hpp"

namespace deflab::cli {

inline constexpr std::string_view kTimeSeriesHeader = "t,V_r,V_i,I_r_gen,I_i_gen,I_r_z,I_i_z,I_r_p,I_i_p";
inline constexpr std::string_view kDefTraceHeader = "t,E_star";

/// Significant digits for CSV floats: DEFLAB_PRECISION if set (1..17),
/// otherwise 17. Throws Error(Config) for an unusable value.
int csv_precision();

struct ScenarioSeries {
    ElementTimeSeries generator;
    ElementTimeSeries impedance;
    ElementTimeSeries constant_power;

    /// Lookup by "generator", "impedance" or "constant_power".
    [[nodiscard]] const ElementTimeSeries& element(std::string_view name) const;
};

void write_timeseries(std::ostream& out, const ScenarioResult& result, int precision);

/// Throws Error(Schema) with the offending line number on any mismatch.
ScenarioSeries read_timeseries(std::istream& in, const std::string& origin);

void write_def_trace(std::ostream& out, const DefTrace& trace, int precision);

}  // namespace deflab::cli
