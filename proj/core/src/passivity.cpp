#include "deflab/passivity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "deflab/error.hpp"

namespace deflab {

namespace {

void require_frequency(double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw Error(ErrorKind::InvalidArgument,
                    "oscillation frequency must be positive, got " + std::to_string(omega));
    }
}

}  // namespace

Eigen::Matrix2cd gamma(double omega) {
    require_frequency(omega);
    // -1/(j w) = j/w
    const Complex up(0.0, 1.0 / omega);
    Eigen::Matrix2cd g;
    g << Complex(0.0, 0.0), up,
         -up, Complex(0.0, 0.0);
    return g;
}

Eigen::Matrix2cd PassivityTransform::gamma_at(double omega) const { return gamma(omega); }

HermitianK k_matrix(const Frf& y, double omega) {
    const PassivityTransform transform;
    const Eigen::Matrix2cd a = transform.transform_M.cast<Complex>() * y * transform.gamma_at(omega);
    return {0.5 * (a + a.adjoint()), omega};
}

EigenPair eig_hermitian_2x2(const Eigen::Matrix2cd& k) {
    const double scale = k.cwiseAbs().maxCoeff();
    if (!std::isfinite(scale)) {
        throw Error(ErrorKind::NonHermitian, "matrix has non-finite entries");
    }
    const double skew = (k - k.adjoint()).cwiseAbs().maxCoeff();
    if (skew > 1e-12 * scale) {
        throw Error(ErrorKind::NonHermitian,
                    "matrix is not Hermitian (max |K - K^H| = " + std::to_string(skew) + ")");
    }
    const double a = k(0, 0).real();
    const double d = k(1, 1).real();
    const double mean = 0.5 * (a + d);
    // sqrt(mean^2 - det) rewritten without the cancellation in mean^2 - det.
    const double radius = std::hypot(0.5 * (a - d), std::abs(k(0, 1)));
    return {mean - radius, mean + radius};
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Lossless: return "Lossless";
        case Verdict::Passive: return "Passive";
        case Verdict::StrictlyPassive: return "StrictlyPassive";
        case Verdict::Indefinite: return "Indefinite";
        case Verdict::Active: return "Active";
    }
    return "Unknown";
}

namespace {

std::vector<EigenPair> eigen_sweep(const ElementModel& model, std::span<const double> omega_grid) {
    if (omega_grid.empty()) {
        throw Error(ErrorKind::InvalidArgument, "frequency grid is empty");
    }
    std::vector<EigenPair> ev;
    ev.reserve(omega_grid.size());
    for (double omega : omega_grid) {
        ev.push_back(eig_hermitian_2x2(k_matrix(frf(model, omega), omega)));
    }
    return ev;
}

Verdict decide(const std::vector<EigenPair>& ev, double tol) {
    const auto zero = [tol](const EigenPair& e) {
        return std::abs(e.min) <= tol && std::abs(e.max) <= tol;
    };
    const auto negative = [tol](const EigenPair& e) { return e.min < -tol; };
    const auto positive = [tol](const EigenPair& e) { return e.max > tol; };
    const auto definite = [tol](const EigenPair& e) { return e.min > tol; };

    if (std::all_of(ev.begin(), ev.end(), zero)) return Verdict::Lossless;
    if (std::none_of(ev.begin(), ev.end(), negative)) {
        return std::all_of(ev.begin(), ev.end(), definite) ? Verdict::StrictlyPassive
                                                           : Verdict::Passive;
    }
    return std::any_of(ev.begin(), ev.end(), positive) ? Verdict::Indefinite : Verdict::Active;
}

PassivityReport make_report(std::span<const double> omega_grid, std::vector<EigenPair> ev,
                            double tol) {
    PassivityReport report;
    report.omega.assign(omega_grid.begin(), omega_grid.end());
    report.verdict = decide(ev, tol);
    report.eigenvalues = std::move(ev);
    report.tolerance = tol;
    return report;
}

}  // namespace

PassivityReport classify(const ElementModel& model, std::span<const double> omega_grid, double tol) {
    if (!(tol > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "classification tolerance must be positive");
    }
    return make_report(omega_grid, eigen_sweep(model, omega_grid), tol);
}

PassivityReport classify(const ElementModel& model, std::span<const double> omega_grid,
                         const ClassifyTolerance& tolerance) {
    auto ev = eigen_sweep(model, omega_grid);
    double largest = 0.0;
    for (const auto& e : ev) {
        largest = std::max({largest, std::abs(e.min), std::abs(e.max)});
    }
    const double tol = std::max(tolerance.relative * largest, tolerance.absolute);
    return make_report(omega_grid, std::move(ev), tol);
}

std::vector<double> log_frequency_grid(double fmin_hz, double fmax_hz, std::size_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "frequency grid needs at least one point");
    if (!(fmin_hz > 0.0) || !std::isfinite(fmax_hz) || fmax_hz < fmin_hz ||
        (n > 1 && !(fmax_hz > fmin_hz))) {
        throw Error(ErrorKind::InvalidArgument, "frequency grid needs 0 < fmin < fmax");
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> omega(n);
    if (n == 1) {
        omega[0] = two_pi * fmin_hz;
        return omega;
    }
    const double log_lo = std::log(fmin_hz);
    const double log_step = (std::log(fmax_hz) - log_lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        omega[i] = two_pi * std::exp(log_lo + log_step * static_cast<double>(i));
    }
    omega.front() = two_pi * fmin_hz;
    omega.back() = two_pi * fmax_hz;
    return omega;
}

std::vector<double> default_frequency_grid() { return log_frequency_grid(0.01, 10.0, 50); }

double generator_eig_analytic(const ClassicalGenerator& gen, double omega) {
    gen.validate();
    require_frequency(omega);
    const double detuning = gen.synchronizing_power() - gen.inertia_m * omega * omega;
    const double damping_term = omega * gen.damping;
    const double den = detuning * detuning + damping_term * damping_term;
    if (!(den > 0.0)) {
        throw Error(ErrorKind::ResonanceSingularity,
                    "generator eigenvalue undefined at the undamped natural frequency");
    }
    const double emf_ratio = gen.e_prime / gen.xd_prime;
    return gen.damping * emf_ratio * emf_ratio / den;
}

double resistor_power_analytic(double conductance, double omega, double amp_r, double amp_i,
                               double phase_diff) {
    require_frequency(omega);
    if (amp_r < 0.0 || amp_i < 0.0) {
        throw Error(ErrorKind::InvalidArgument, "phasor amplitudes must be nonnegative");
    }
    return 2.0 * conductance * omega * amp_i * amp_r * std::sin(phase_diff);
}

double dissipating_power(const Frf& y, double omega, Complex v_r, Complex v_i) {
    const Complex jw(0.0, omega);
    const Eigen::Vector2cd x(jw * v_i, -jw * v_r);
    const Eigen::Vector2cd current = y * gamma(omega) * x;
    return x.dot(current).real();  // dot() conjugates its left operand
}

}  // namespace deflab
