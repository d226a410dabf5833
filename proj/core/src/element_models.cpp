#include "deflab/element_models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "deflab/error.hpp"

namespace deflab {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

void require_frequency(double omega) {
    if (!positive_finite(omega)) {
        throw Error(ErrorKind::InvalidArgument,
                    "oscillation frequency must be positive, got " + std::to_string(omega));
    }
}

}  // namespace

ImpedanceLoad ImpedanceLoad::from_admittance(double conductance, double susceptance) {
    if (!std::isfinite(conductance) || !std::isfinite(susceptance)) {
        throw Error(ErrorKind::InvalidArgument, "impedance load admittance must be finite");
    }
    return {conductance, susceptance};
}

ImpedanceLoad ImpedanceLoad::from_impedance(double resistance, double reactance) {
    const double mag2 = resistance * resistance + reactance * reactance;
    if (!(mag2 > 0.0) || !std::isfinite(mag2)) {
        throw Error(ErrorKind::InvalidArgument, "impedance R + jX must be finite and nonzero");
    }
    return {resistance / mag2, -reactance / mag2};
}

void ClassicalGenerator::validate() const {
    if (!positive_finite(xd_prime) || !positive_finite(inertia_m) || !positive_finite(e_prime) ||
        !positive_finite(v_terminal)) {
        throw Error(ErrorKind::InvalidArgument,
                    "classical generator requires X_d', M, E' and V_t to be positive");
    }
    if (!std::isfinite(damping) || !std::isfinite(rotor_angle) || !std::isfinite(internal_angle)) {
        throw Error(ErrorKind::InvalidArgument, "classical generator parameters must be finite");
    }
}

double ClassicalGenerator::synchronizing_power() const {
    return v_terminal * e_prime / xd_prime * std::cos(internal_angle);
}

std::string_view element_kind(const ElementModel& model) {
    struct Visitor {
        std::string_view operator()(const ImpedanceLoad&) const { return "impedance"; }
        std::string_view operator()(const PowerLoadOperatingPoint&) const { return "constant_power"; }
        std::string_view operator()(const ClassicalGenerator&) const { return "generator"; }
    };
    return std::visit(Visitor{}, model);
}

Frf frf_impedance(const ImpedanceLoad& load) {
    const double g = load.conductance();
    const double b = load.susceptance();
    Frf y;
    y << g, -b,
         b, g;
    return y;
}

PowerLoadOperatingPoint power_load_from_pq(double p, double q, double v_r, double v_i) {
    const double v2 = v_r * v_r + v_i * v_i;
    if (!(v2 > 0.0) || !std::isfinite(v2)) {
        throw Error(ErrorKind::UndefinedOperatingPoint,
                    "constant-power load needs a nonzero bus voltage");
    }
    PowerLoadOperatingPoint op;
    op.v_r = v_r;
    op.v_i = v_i;
    op.p = p;
    op.q = q;
    op.i_r = (p * v_r + q * v_i) / v2;
    op.i_i = (p * v_i - q * v_r) / v2;
    op.g_p = (v_r * op.i_r - v_i * op.i_i) / v2;
    op.b_p = (-v_i * op.i_r - op.i_i * v_r) / v2;
    return op;
}

Frf frf_power_load(const PowerLoadOperatingPoint& op) {
    Frf y;
    y << -op.g_p, op.b_p,
         op.b_p, op.g_p;
    return y;
}

Complex generator_gamma(const ClassicalGenerator& gen, double omega) {
    gen.validate();
    require_frequency(omega);

    const double ks = gen.synchronizing_power();
    const double inertial = gen.inertia_m * omega * omega;
    const double detuning = ks - inertial;
    const double damping_term = omega * gen.damping;
    const double den = detuning * detuning + damping_term * damping_term;

    const double scale = std::max(std::abs(ks), inertial);
    if (!(den > 1e-24 * scale * scale)) {
        throw Error(ErrorKind::ResonanceSingularity,
                    "generator response is singular: undamped machine at its natural frequency");
    }
    const double emf_ratio = gen.e_prime / gen.xd_prime;
    // M (j omega)^2 + K_s - j omega D
    const Complex num(detuning, -damping_term);
    return emf_ratio * emf_ratio * num / den;
}

Frf frf_generator(const ClassicalGenerator& gen, double omega) {
    const Complex gamma = generator_gamma(gen, omega);
    const double s = std::sin(gen.rotor_angle);
    const double c = std::cos(gen.rotor_angle);
    const double x_inv = 1.0 / gen.xd_prime;

    Frf coupling;
    coupling << s * c, -c * c,
                s * s, -s * c;
    Frf stator;
    stator << 0.0, x_inv,
              -x_inv, 0.0;
    return gamma * coupling + stator;
}

Frf frf(const ElementModel& model, double omega) {
    require_frequency(omega);
    struct Visitor {
        double omega;
        Frf operator()(const ImpedanceLoad& z) const { return frf_impedance(z); }
        Frf operator()(const PowerLoadOperatingPoint& p) const { return frf_power_load(p); }
        Frf operator()(const ClassicalGenerator& g) const { return frf_generator(g, omega); }
    };
    return std::visit(Visitor{omega}, model);
}

ClassicalGenerator generator_equilibrium(const GeneratorParams& params, double v_terminal,
                                         double theta_terminal, double p_gen) {
    ClassicalGenerator gen;
    gen.e_prime = params.e_prime;
    gen.xd_prime = params.xd_prime;
    gen.inertia_m = params.inertia_m;
    gen.damping = params.damping;
    gen.v_terminal = v_terminal;
    gen.validate();

    double s = p_gen * params.xd_prime / (params.e_prime * v_terminal);
    if (!std::isfinite(s) || std::abs(s) > 1.0 + 1e-12) {
        throw Error(ErrorKind::InfeasibleDispatch,
                    "dispatch " + std::to_string(p_gen) + " pu exceeds the machine's maximum transfer");
    }
    s = std::clamp(s, -1.0, 1.0);
    gen.internal_angle = std::asin(s);
    gen.rotor_angle = theta_terminal + gen.internal_angle;
    return gen;
}

}  // namespace deflab
