#pragma once

// Forced-oscillation experiment: an infinite bus whose rectangular voltage
// components oscillate about a base value drives three shunt elements tied
// directly to it - a classical generator, a constant-impedance load and a
// constant-power load. The generator is integrated with fixed-step RK4; the
// loads are algebraic. All recorded currents flow into the element.

#include <vector>

#include "deflab/def_engine.hpp"
#include "deflab/element_models.hpp"

namespace deflab {

struct ForcingSpec {
    double omega = 0.0;      // forcing frequency, rad/s
    double amp_r = 0.01;     // peak amplitude of the V_r oscillation, pu
    double amp_i = 0.01;     // peak amplitude of the V_i oscillation, pu
    double theta_r = 0.0;    // rad
    double theta_i = 0.0;    // rad
    double v_r0 = 1.0;       // base bus voltage, pu
    double v_i0 = 0.0;
    double duration = 0.0;   // forcing duration after the pre-window, s
    double step = 1e-3;      // s
    double ramp = 0.0;       // half-cosine ramp-in time, s
    double pre_window = 2.0; // unforced lead-in, s

    [[nodiscard]] double period() const;

    /// amp >= 0, duration >= 10 periods, 0 < step <= period/200, ramp >= 0,
    /// pre_window >= 2 s. Throws InvalidArgument.
    void validate() const;
};

/// min(1 ms, period / 200).
double default_step(double omega);

/// Test-style forcing: amp on both axes, theta_r - theta_i = phase_diff,
/// ramp over two periods, default step.
ForcingSpec make_forcing(double omega, double amp, double phase_diff, double duration);

/// Peak phasors of the bus oscillation, (amp_r e^{j theta_r}, amp_i e^{j theta_i}).
struct ForcingPhasors {
    Complex v_r;
    Complex v_i;
};
ForcingPhasors forcing_phasors(const ForcingSpec& spec);

/// V(t) = V0 + r(t) * amp * cos(omega (t - pre_window) + theta), with r a
/// half-cosine ramp from 0 to 1 that starts at the end of the pre-window.
Complex bus_voltage(const ForcingSpec& spec, double t);

struct LoadCurrents {
    Complex impedance;
    Complex constant_power;
};

/// Instantaneous load currents at bus voltage v. The constant-power load keeps
/// its (P, Q) setpoint exactly. Throws VoltageCollapse if |v| < 0.1 pu.
LoadCurrents load_currents(Complex v, const ImpedanceLoad& z, const PowerLoadOperatingPoint& p);

struct GeneratorState {
    double delta = 0.0;        // rotor angle, rad
    double speed_dev = 0.0;    // rotor speed deviation
};

/// Bus voltage at the start, midpoint and end of one integration step.
struct BusStep {
    Complex start;
    Complex mid;
    Complex end;
};

/// One RK4 step of
///     d(delta)/dt = w,
///     M dw/dt = P_m - (E' |V| / X_d') sin(delta - angle(V)) - D w.
/// Throws NonFiniteState if the result is not finite.
GeneratorState step_generator(const GeneratorState& state, const BusStep& bus,
                              const ClassicalGenerator& gen, double p_mech, double h);

/// Same, with the bus voltage held constant over the step.
GeneratorState step_generator(const GeneratorState& state, Complex bus,
                              const ClassicalGenerator& gen, double p_mech, double h);

/// Stator current flowing into the generator, (V - E' e^{j delta}) / (j X_d').
Complex generator_current_into(const GeneratorState& state, Complex bus,
                               const ClassicalGenerator& gen);

struct ScenarioElements {
    ClassicalGenerator generator;
    ImpedanceLoad impedance;
    PowerLoadOperatingPoint constant_power;
};

/// Places the generator at equilibrium with p_gen against the base bus
/// voltage and evaluates the constant-power load there.
ScenarioElements make_elements(const ForcingSpec& spec, const GeneratorParams& gen, double p_gen,
                               const ImpedanceLoad& z, double p_load, double q_load);

struct ScenarioResult {
    ElementTimeSeries generator;
    ElementTimeSeries impedance;
    ElementTimeSeries constant_power;
    std::vector<double> rotor_angle;
    std::vector<double> speed_dev;
    ForcingSpec forcing;
    ScenarioElements elements;
    double p_mech = 0.0;
};

ScenarioResult run_scenario(const ForcingSpec& spec, const ScenarioElements& elements,
                            double p_mech);

/// Mean removal over the pre-window and a slope fit over whole periods
/// after the ramp.
DefOptions def_options(const ForcingSpec& spec);

}  // namespace deflab
