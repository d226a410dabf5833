#pragma once

// Linearized small-signal models of the three shunt elements studied here:
// constant impedance, constant power and the classical (2nd order) generator.
// Every model maps rectangular voltage phasor perturbations (V_r, V_i) to
// rectangular current phasor perturbations (I_r, I_i), with positive current
// flowing INTO the element.

#include <complex>
#include <string_view>
#include <variant>

#include <Eigen/Dense>

namespace deflab {

using Complex = std::complex<double>;

/// Frequency response of one element at a single oscillation frequency.
/// Column (V_r, V_i) in, column (I_r, I_i) out.
using Frf = Eigen::Matrix2cd;

class ImpedanceLoad {
public:
    ImpedanceLoad() = default;

    static ImpedanceLoad from_admittance(double conductance, double susceptance);
    /// G + jB = (R + jX)^-1; requires R^2 + X^2 > 0.
    static ImpedanceLoad from_impedance(double resistance, double reactance);

    [[nodiscard]] double conductance() const noexcept { return conductance_; }
    [[nodiscard]] double susceptance() const noexcept { return susceptance_; }
    [[nodiscard]] Complex admittance() const noexcept { return {conductance_, susceptance_}; }

private:
    ImpedanceLoad(double g, double b) : conductance_(g), susceptance_(b) {}

    double conductance_ = 0.0;
    double susceptance_ = 0.0;
};

/// Steady state of a constant-power load, with the linearization
/// coefficients G_p and B_p precomputed from the stored voltage and current.
struct PowerLoadOperatingPoint {
    double v_r = 1.0;
    double v_i = 0.0;
    double i_r = 0.0;
    double i_i = 0.0;
    double p = 0.0;
    double q = 0.0;
    double g_p = 0.0;
    double b_p = 0.0;
};

/// Constant E' behind X_d' with swing dynamics M*dw/dt = P_m - P_e - D*w.
struct ClassicalGenerator {
    double e_prime = 1.0;        // internal EMF magnitude, pu
    double xd_prime = 0.3;       // transient reactance, pu
    double inertia_m = 1.0;      // pu*s^2 (2H/w_s)
    double damping = 0.0;        // pu torque per pu speed deviation, any sign
    double v_terminal = 1.0;     // terminal voltage magnitude, pu
    double rotor_angle = 0.0;    // absolute rotor angle delta, rad
    double internal_angle = 0.0; // phi = delta - theta_t, rad

    /// Throws InvalidArgument unless X_d', M, E' and V_t are positive.
    void validate() const;

    /// Synchronizing coefficient V_t E' cos(phi) / X_d'.
    [[nodiscard]] double synchronizing_power() const;
};

using ElementModel = std::variant<ImpedanceLoad, PowerLoadOperatingPoint, ClassicalGenerator>;

std::string_view element_kind(const ElementModel& model);

/// [[G, -B], [B, G]], independent of frequency.
Frf frf_impedance(const ImpedanceLoad& load);

/// Solves P + jQ = V I* for the current at the given bus voltage.
/// Throws UndefinedOperatingPoint when V = 0.
PowerLoadOperatingPoint power_load_from_pq(double p, double q, double v_r, double v_i);

/// [[-G_p, B_p], [B_p, G_p]], independent of frequency.
Frf frf_power_load(const PowerLoadOperatingPoint& op);

/// Scalar gain gamma(omega) multiplying the rotor-angle coupling term of the
/// generator response. Throws ResonanceSingularity for an undamped machine
/// forced exactly at its natural frequency.
Complex generator_gamma(const ClassicalGenerator& gen, double omega);

/// gamma * [[s c, -c^2], [s^2, -s c]] + [[0, 1/X_d'], [-1/X_d', 0]],
/// s = sin(delta), c = cos(delta).
Frf frf_generator(const ClassicalGenerator& gen, double omega);

/// Evaluates whichever model is held at frequency omega (rad/s).
Frf frf(const ElementModel& model, double omega);

/// Machine constants without an operating point.
struct GeneratorParams {
    double e_prime = 1.1;
    double xd_prime = 0.3;
    double inertia_m = 4.0;
    double damping = 2.0;
};

/// Places the rotor so the electrical output (E' V_t / X_d') sin(phi)
/// equals p_gen. Throws InfeasibleDispatch if |p_gen X_d' / (E' V_t)| > 1.
ClassicalGenerator generator_equilibrium(const GeneratorParams& params, double v_terminal,
                                         double theta_terminal, double p_gen);

}  // namespace deflab
