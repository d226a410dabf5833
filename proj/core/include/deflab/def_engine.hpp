#pragma once

// Dissipating energy from sampled trajectories:
//
//     E*(t) = integral of ( I_r dV_i/dt - I_i dV_r/dt ) dt
//
// Positive E* means the element absorbs oscillation energy (a sink).

#include <optional>
#include <span>
#include <vector>

namespace deflab {

/// Uniformly sampled bus voltage and element current (current into the element).
struct ElementTimeSeries {
    std::vector<double> t;
    std::vector<double> v_r;
    std::vector<double> v_i;
    std::vector<double> i_r;
    std::vector<double> i_i;

    /// Equal lengths >= 3 and uniform spacing to 1e-9 of the step; throws
    /// InvalidArgument otherwise.
    void validate() const;

    /// (t_back - t_front) / (n - 1).
    [[nodiscard]] double step() const;
    [[nodiscard]] std::size_t size() const noexcept { return t.size(); }
};

struct DefOptions {
    /// Leading samples with t < t_front + pre_window set the steady state
    /// subtracted from every channel. Zero disables the subtraction.
    double pre_window = 0.0;
    /// Forcing period (s). Enables the windowed mean-power estimate.
    std::optional<double> period;
    /// Samples before this time are excluded from the mean-power fit.
    double fit_start = 0.0;
};

struct DefTrace {
    std::vector<double> t;
    std::vector<double> e_star;
    std::optional<double> p_bar;  // windowed mean dissipating power
    double window = 0.0;          // seconds used for p_bar
};

/// Central differences inside, second-order one-sided stencils at the ends.
/// Exact for quadratics. Throws InvalidArgument for fewer than 3 samples.
std::vector<double> differentiate(std::span<const double> series, double h);

/// Cumulative trapezoid, starting at zero.
std::vector<double> cumulative_trapezoid(std::span<const double> rate, double h);

struct SlopeFit {
    double slope = 0.0;
    double window = 0.0;
};

/// Mean rate of change of e over the longest trailing window that is a whole
/// number of forcing periods and starts no earlier than fit_start. Least
/// squares on a + b t plus cos/sin terms at w and 2w, w = 2 pi / period, so
/// periodic ripple in a sinusoidal steady state does not bias b.
/// Throws InvalidArgument if not even one period fits.
SlopeFit windowed_slope(std::span<const double> t, std::span<const double> e, double period,
                        double fit_start);

/// Supply-rate form: differentiate the voltages, then integrate.
DefTrace def_integral(const ElementTimeSeries& ts, const DefOptions& options = {});

/// Stieltjes form of the integral of Im{I* dV}: voltage increments weighted by
/// the midpoint current.
DefTrace def_integral_raw(const ElementTimeSeries& ts, const DefOptions& options = {});

}  // namespace deflab
