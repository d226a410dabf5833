#include "deflab/def_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "deflab/error.hpp"

namespace deflab {

void ElementTimeSeries::validate() const {
    const std::size_t n = t.size();
    if (v_r.size() != n || v_i.size() != n || i_r.size() != n || i_i.size() != n) {
        throw Error(ErrorKind::InvalidArgument, "time series channels have different lengths");
    }
    if (n < 3) {
        throw Error(ErrorKind::InvalidArgument, "time series needs at least 3 samples");
    }
    const double h = step();
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw Error(ErrorKind::InvalidArgument, "time series must be strictly increasing");
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (std::abs(t[k + 1] - t[k] - h) > 1e-9 * h) {
            throw Error(ErrorKind::InvalidArgument,
                        "non-uniform sampling at t = " + std::to_string(t[k]));
        }
    }
}

double ElementTimeSeries::step() const {
    if (t.size() < 2) return 0.0;
    return (t.back() - t.front()) / static_cast<double>(t.size() - 1);
}

std::vector<double> differentiate(std::span<const double> series, double h) {
    const std::size_t n = series.size();
    if (n < 3) throw Error(ErrorKind::InvalidArgument, "differentiation needs at least 3 samples");
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "sample step must be positive");

    std::vector<double> d(n);
    const double inv2h = 0.5 / h;
    d[0] = (-3.0 * series[0] + 4.0 * series[1] - series[2]) * inv2h;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        d[k] = (series[k + 1] - series[k - 1]) * inv2h;
    }
    d[n - 1] = (3.0 * series[n - 1] - 4.0 * series[n - 2] + series[n - 3]) * inv2h;
    return d;
}

std::vector<double> cumulative_trapezoid(std::span<const double> rate, double h) {
    std::vector<double> out(rate.size(), 0.0);
    for (std::size_t k = 1; k < rate.size(); ++k) {
        out[k] = out[k - 1] + 0.5 * h * (rate[k - 1] + rate[k]);
    }
    return out;
}

SlopeFit windowed_slope(std::span<const double> t, std::span<const double> e, double period,
                        double fit_start) {
    if (t.size() != e.size() || t.size() < 2) {
        throw Error(ErrorKind::InvalidArgument, "slope fit needs matching series of length >= 2");
    }
    if (!(period > 0.0)) throw Error(ErrorKind::InvalidArgument, "period must be positive");

    const double t_end = t.back();
    const double span_available = t_end - std::max(fit_start, t.front());
    const double periods = std::floor(span_available / period + 1e-9);
    if (periods < 1.0) {
        throw Error(ErrorKind::InvalidArgument,
                    "series is shorter than one forcing period after the fit start");
    }
    const double window = periods * period;
    const double h = (t_end - t.front()) / static_cast<double>(t.size() - 1);
    const double t_lo = t_end - window - 0.5 * h;

    std::size_t first = 0;
    while (t[first] < t_lo) ++first;
    const std::size_t count = t.size() - first;

    if (count < 7) throw Error(ErrorKind::InvalidArgument, "slope window holds too few samples");

    // Regressors: 1, (t - t_mid)/window and the first two harmonics. The
    // second harmonic is the oscillating part of E* in a sinusoidal steady
    // state; the fundamental appears when the steady-state current was not
    // removed, and would otherwise leak into the trend.
    const double w = 2.0 * std::numbers::pi / period;
    const double t_mid = 0.5 * (t[first] + t_end);
    using Vector6d = Eigen::Matrix<double, 6, 1>;
    Eigen::Matrix<double, 6, 6> normal = Eigen::Matrix<double, 6, 6>::Zero();
    Vector6d rhs = Vector6d::Zero();
    for (std::size_t k = first; k < t.size(); ++k) {
        Vector6d row;
        row << 1.0, (t[k] - t_mid) / window, std::cos(w * t[k]), std::sin(w * t[k]),
            std::cos(2.0 * w * t[k]), std::sin(2.0 * w * t[k]);
        normal.selfadjointView<Eigen::Lower>().rankUpdate(row);
        rhs += row * e[k];
    }
    const Vector6d coef = normal.selfadjointView<Eigen::Lower>().ldlt().solve(rhs);
    return {coef(1) / window, window};
}

namespace {

struct Perturbations {
    std::vector<double> v_r, v_i, i_r, i_i;
};

std::vector<double> minus_mean(const std::vector<double>& x, std::size_t count) {
    std::vector<double> out(x);
    if (count == 0) return out;
    const double mean = std::accumulate(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(count), 0.0) /
                        static_cast<double>(count);
    for (double& v : out) v -= mean;
    return out;
}

Perturbations remove_steady_state(const ElementTimeSeries& ts, double pre_window) {
    std::size_t count = 0;
    if (pre_window > 0.0) {
        const double cutoff = ts.t.front() + pre_window - 0.5 * ts.step();
        while (count < ts.size() && ts.t[count] < cutoff) ++count;
    }
    return {minus_mean(ts.v_r, count), minus_mean(ts.v_i, count), minus_mean(ts.i_r, count),
            minus_mean(ts.i_i, count)};
}

void attach_mean_power(DefTrace& trace, const DefOptions& options) {
    if (!options.period) return;
    const SlopeFit fit = windowed_slope(trace.t, trace.e_star, *options.period, options.fit_start);
    trace.p_bar = fit.slope;
    trace.window = fit.window;
}

}  // namespace

DefTrace def_integral(const ElementTimeSeries& ts, const DefOptions& options) {
    ts.validate();
    const double h = ts.step();
    const Perturbations x = remove_steady_state(ts, options.pre_window);
    const std::vector<double> dv_r = differentiate(x.v_r, h);
    const std::vector<double> dv_i = differentiate(x.v_i, h);

    std::vector<double> rate(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        rate[k] = x.i_r[k] * dv_i[k] - x.i_i[k] * dv_r[k];
    }
    DefTrace trace{ts.t, cumulative_trapezoid(rate, h), std::nullopt, 0.0};
    attach_mean_power(trace, options);
    return trace;
}

DefTrace def_integral_raw(const ElementTimeSeries& ts, const DefOptions& options) {
    ts.validate();
    const Perturbations x = remove_steady_state(ts, options.pre_window);

    std::vector<double> e(ts.size(), 0.0);
    for (std::size_t k = 1; k < ts.size(); ++k) {
        const double i_r = 0.5 * (x.i_r[k - 1] + x.i_r[k]);
        const double i_i = 0.5 * (x.i_i[k - 1] + x.i_i[k]);
        e[k] = e[k - 1] + i_r * (x.v_i[k] - x.v_i[k - 1]) - i_i * (x.v_r[k] - x.v_r[k - 1]);
    }
    DefTrace trace{ts.t, std::move(e), std::nullopt, 0.0};
    attach_mean_power(trace, options);
    return trace;
}

}  // namespace deflab
