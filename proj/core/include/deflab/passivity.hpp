#pragma once

// Passivity analysis of element responses under the dissipating-energy
// transformation. With transform_M = I and
//
//     Gamma(omega) = [[0, -1/(j omega)], [1/(j omega), 0]],
//
// the transformed system has input (dV_i/dt, -dV_r/dt) and output (I_r, I_i),
// so its supply-rate integral is exactly the dissipating energy. The element
// dissipates (absorbs) energy at omega when the Hermitian part
//
//     K(omega) = 1/2 (M Y Gamma + (M Y Gamma)^H)
//
// is positive semidefinite. Positive values mean the element is a sink.
//
// Only the frequencies on the supplied grid are checked. Poles on the
// imaginary axis between grid points are not detected.

#include <span>
#include <string_view>
#include <vector>

#include "deflab/element_models.hpp"

namespace deflab {

struct PassivityTransform {
    Eigen::Matrix2d transform_M = Eigen::Matrix2d::Identity();

    /// Throws InvalidArgument for omega <= 0.
    [[nodiscard]] Eigen::Matrix2cd gamma_at(double omega) const;
};

/// [[0, j/omega], [-j/omega, 0]].
Eigen::Matrix2cd gamma(double omega);

struct HermitianK {
    Eigen::Matrix2cd k;
    double omega = 0.0;
};

HermitianK k_matrix(const Frf& y, double omega);

struct EigenPair {
    double min = 0.0;
    double max = 0.0;
};

/// Closed-form eigenvalues of a 2x2 Hermitian matrix. Throws NonHermitian if
/// k deviates from k^H by more than 1e-12 of its largest entry.
EigenPair eig_hermitian_2x2(const Eigen::Matrix2cd& k);
inline EigenPair eig_hermitian_2x2(const HermitianK& k) { return eig_hermitian_2x2(k.k); }

enum class Verdict {
    Lossless,         // K = 0 everywhere on the grid
    Passive,          // K >= 0 everywhere, not always definite
    StrictlyPassive,  // K > 0 everywhere
    Indefinite,       // K has both signs
    Active,           // K <= 0 everywhere, nonzero somewhere
};

std::string_view to_string(Verdict verdict);

struct PassivityReport {
    std::vector<double> omega;        // rad/s
    std::vector<EigenPair> eigenvalues;
    Verdict verdict = Verdict::Lossless;
    double tolerance = 0.0;
};

struct ClassifyTolerance {
    double relative = 1e-9;   // scaled by max |lambda| over the grid
    double absolute = 1e-12;  // floor
};

/// Eigenvalues of K over the grid (rad/s) with the verdict decided at the
/// absolute tolerance `tol`.
PassivityReport classify(const ElementModel& model, std::span<const double> omega_grid, double tol);

/// Same, with tol = max(relative * max|lambda|, absolute).
PassivityReport classify(const ElementModel& model, std::span<const double> omega_grid,
                         const ClassifyTolerance& tolerance = {});

/// n log-spaced frequencies between fmin and fmax (Hz), returned in rad/s.
/// A single point grid returns fmin.
std::vector<double> log_frequency_grid(double fmin_hz, double fmax_hz, std::size_t n);

/// 50 points over 0.01 - 10 Hz.
std::vector<double> default_frequency_grid();

/// Nonzero eigenvalue of K for the classical generator,
/// D (E'/X_d')^2 / ((V_t E' cos(phi) / X_d' - M omega^2)^2 + (omega D)^2).
double generator_eig_analytic(const ClassicalGenerator& gen, double omega);

/// P* = 2 G omega |V_i| |V_r| sin(theta_r - theta_i) for a conductance driven
/// by peak-amplitude voltage phasors. The time-averaged power is P*/2.
double resistor_power_analytic(double conductance, double omega, double amp_r, double amp_i,
                               double phase_diff);

/// P* = Re{x^H (Y Gamma) x} with x = (j omega V_i, -j omega V_r), the
/// transformed input. Peak-amplitude phasors; the time average is P*/2.
double dissipating_power(const Frf& y, double omega, Complex v_r, Complex v_i);

/// Time average of the supply rate for peak-amplitude phasors.
inline double time_averaged(double p_star) { return 0.5 * p_star; }

}  // namespace deflab
