#include "deflab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "deflab/error.hpp"

namespace deflab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCollapseVoltage = 0.1;

struct Derivative {
    double d_delta;
    double d_speed;
};

Derivative swing_rhs(double delta, double speed, Complex v, const ClassicalGenerator& gen,
                     double p_mech) {
    // (E'/X_d') Im{conj(V) e^{j delta}} = (E' |V| / X_d') sin(delta - angle V)
    const double p_elec =
        gen.e_prime / gen.xd_prime * (v.real() * std::sin(delta) - v.imag() * std::cos(delta));
    return {speed, (p_mech - p_elec - gen.damping * speed) / gen.inertia_m};
}

void record(ElementTimeSeries& ts, double t, Complex v, Complex i) {
    ts.t.push_back(t);
    ts.v_r.push_back(v.real());
    ts.v_i.push_back(v.imag());
    ts.i_r.push_back(i.real());
    ts.i_i.push_back(i.imag());
}

void reserve(ElementTimeSeries& ts, std::size_t n) {
    ts.t.reserve(n);
    ts.v_r.reserve(n);
    ts.v_i.reserve(n);
    ts.i_r.reserve(n);
    ts.i_i.reserve(n);
}

}  // namespace

double ForcingSpec::period() const { return 2.0 * kPi / omega; }

void ForcingSpec::validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw Error(ErrorKind::InvalidArgument, "forcing frequency must be positive");
    }
    if (!(amp_r >= 0.0) || !(amp_i >= 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "forcing amplitudes must be nonnegative");
    }
    if (!(duration >= 10.0 * period() * (1.0 - 1e-9))) {
        throw Error(ErrorKind::InvalidArgument, "forcing duration must cover at least 10 periods");
    }
    if (!(step > 0.0) || step > period() / 200.0 * (1.0 + 1e-12)) {
        throw Error(ErrorKind::InvalidArgument,
                    "integration step must be positive and at most period/200");
    }
    if (!(ramp >= 0.0)) throw Error(ErrorKind::InvalidArgument, "ramp time must be nonnegative");
    if (!(pre_window >= 2.0)) {
        throw Error(ErrorKind::InvalidArgument, "pre-forcing window must be at least 2 s");
    }
    if (!std::isfinite(theta_r) || !std::isfinite(theta_i) || !std::isfinite(v_r0) ||
        !std::isfinite(v_i0)) {
        throw Error(ErrorKind::InvalidArgument, "forcing phases and base voltage must be finite");
    }
}

double default_step(double omega) { return std::min(1e-3, 2.0 * kPi / omega / 200.0); }

ForcingSpec make_forcing(double omega, double amp, double phase_diff, double duration) {
    ForcingSpec spec;
    spec.omega = omega;
    spec.amp_r = amp;
    spec.amp_i = amp;
    spec.theta_r = phase_diff;
    spec.theta_i = 0.0;
    spec.duration = duration;
    spec.step = default_step(omega);
    spec.ramp = 2.0 * spec.period();
    return spec;
}

ForcingPhasors forcing_phasors(const ForcingSpec& spec) {
    return {std::polar(spec.amp_r, spec.theta_r), std::polar(spec.amp_i, spec.theta_i)};
}

Complex bus_voltage(const ForcingSpec& spec, double t) {
    const double tau = t - spec.pre_window;
    if (tau <= 0.0) return {spec.v_r0, spec.v_i0};
    const double ramp = tau >= spec.ramp ? 1.0 : 0.5 * (1.0 - std::cos(kPi * tau / spec.ramp));
    const double arg = spec.omega * tau;
    return {spec.v_r0 + ramp * spec.amp_r * std::cos(arg + spec.theta_r),
            spec.v_i0 + ramp * spec.amp_i * std::cos(arg + spec.theta_i)};
}

LoadCurrents load_currents(Complex v, const ImpedanceLoad& z, const PowerLoadOperatingPoint& p) {
    const double v2 = std::norm(v);
    if (!(v2 >= kCollapseVoltage * kCollapseVoltage)) {
        throw Error(ErrorKind::VoltageCollapse,
                    "bus voltage magnitude " + std::to_string(std::sqrt(v2)) + " pu below 0.1 pu");
    }
    LoadCurrents out;
    out.impedance = z.admittance() * v;
    out.constant_power = {(p.p * v.real() + p.q * v.imag()) / v2,
                          (p.p * v.imag() - p.q * v.real()) / v2};
    return out;
}

GeneratorState step_generator(const GeneratorState& s, const BusStep& bus,
                              const ClassicalGenerator& gen, double p_mech, double h) {
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
    const double half = 0.5 * h;
    const Derivative k1 = swing_rhs(s.delta, s.speed_dev, bus.start, gen, p_mech);
    const Derivative k2 = swing_rhs(s.delta + half * k1.d_delta, s.speed_dev + half * k1.d_speed,
                                    bus.mid, gen, p_mech);
    const Derivative k3 = swing_rhs(s.delta + half * k2.d_delta, s.speed_dev + half * k2.d_speed,
                                    bus.mid, gen, p_mech);
    const Derivative k4 =
        swing_rhs(s.delta + h * k3.d_delta, s.speed_dev + h * k3.d_speed, bus.end, gen, p_mech);

    GeneratorState next;
    next.delta = s.delta + h / 6.0 * (k1.d_delta + 2.0 * k2.d_delta + 2.0 * k3.d_delta + k4.d_delta);
    next.speed_dev =
        s.speed_dev + h / 6.0 * (k1.d_speed + 2.0 * k2.d_speed + 2.0 * k3.d_speed + k4.d_speed);
    if (!std::isfinite(next.delta) || !std::isfinite(next.speed_dev)) {
        throw Error(ErrorKind::NonFiniteState, "generator state became non-finite");
    }
    return next;
}

GeneratorState step_generator(const GeneratorState& state, Complex bus,
                              const ClassicalGenerator& gen, double p_mech, double h) {
    return step_generator(state, BusStep{bus, bus, bus}, gen, p_mech, h);
}

Complex generator_current_into(const GeneratorState& state, Complex bus,
                               const ClassicalGenerator& gen) {
    const Complex emf = std::polar(gen.e_prime, state.delta);
    return (bus - emf) / Complex(0.0, gen.xd_prime);
}

ScenarioElements make_elements(const ForcingSpec& spec, const GeneratorParams& gen, double p_gen,
                               const ImpedanceLoad& z, double p_load, double q_load) {
    const Complex v0(spec.v_r0, spec.v_i0);
    ScenarioElements elements;
    elements.generator = generator_equilibrium(gen, std::abs(v0), std::arg(v0), p_gen);
    elements.impedance = z;
    elements.constant_power = power_load_from_pq(p_load, q_load, spec.v_r0, spec.v_i0);
    return elements;
}

ScenarioResult run_scenario(const ForcingSpec& spec, const ScenarioElements& elements,
                            double p_mech) {
    spec.validate();
    elements.generator.validate();

    const double h = spec.step;
    const auto steps = static_cast<std::size_t>(std::llround((spec.pre_window + spec.duration) / h));
    const std::size_t n = steps + 1;

    ScenarioResult result;
    result.forcing = spec;
    result.elements = elements;
    result.p_mech = p_mech;
    for (ElementTimeSeries* ts : {&result.generator, &result.impedance, &result.constant_power}) {
        reserve(*ts, n);
    }
    result.rotor_angle.reserve(n);
    result.speed_dev.reserve(n);

    const ClassicalGenerator& gen = elements.generator;
    GeneratorState state{gen.rotor_angle, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * h;
        const Complex v = bus_voltage(spec, t);
        const LoadCurrents loads = load_currents(v, elements.impedance, elements.constant_power);

        record(result.generator, t, v, generator_current_into(state, v, gen));
        record(result.impedance, t, v, loads.impedance);
        record(result.constant_power, t, v, loads.constant_power);
        result.rotor_angle.push_back(state.delta);
        result.speed_dev.push_back(state.speed_dev);

        if (k + 1 < n) {
            const BusStep bus{v, bus_voltage(spec, t + 0.5 * h),
                              bus_voltage(spec, static_cast<double>(k + 1) * h)};
            state = step_generator(state, bus, gen, p_mech, h);
        }
    }
    return result;
}

DefOptions def_options(const ForcingSpec& spec) {
    DefOptions options;
    options.pre_window = spec.pre_window;
    options.period = spec.period();
    options.fit_start = spec.pre_window + spec.ramp;
    return options;
}

}  // namespace deflab
