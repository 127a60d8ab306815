#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pemb/beam.hpp"
#include "pemb/errors.hpp"

namespace pemb {

// Bending piezoelectric actuator, modeled as a lossless linear two-port:
//   moment M  = K_mm * chi + K_me * V_p
//   charge Q  = K_em * chi + K_ee * V_p
// where chi is the relative end-rotation change and V_p the terminal voltage.
// A continuous layer of such actuators glued along the beam couples the
// electrical network analog back into the beam's bending moment.
struct ActuatorSpec {
    double K_mm = 0.0;  // mechanical stiffness term, N*m per unit curvature change
    double K_me = 0.0;  // voltage-to-moment cross coupling
    double K_em = 0.0;  // rotation-to-charge cross coupling
    double K_ee = 0.0;  // capacitive term, F
    double l_p = 0.0;   // actuator length, m
    double V_max = 0.0; // producer's maximum voltage rating, V
    // Drop the piezo-layer bending stiffness k_mm from the effective moment
    // (it is usually small against the beam's own bending stiffness).
    bool neglect_layer_stiffness = true;
};

// Result of checking the passivity conditions K_mm >= 0, K_ee >= 0 and
// K_em = -K_me on an actuator spec. Ideal (loss-free) transduction requires
// the cross terms to be exact negatives; we allow relative rounding slack.
struct LosslessReport {
    bool passed = false;
    std::vector<std::string> violations;

    std::string to_string() const {
        if (passed) return "lossless: PASS";
        std::string out = "lossless: FAIL";
        for (const auto& v : violations) out += "\n  violated: " + v;
        return out;
    }
};

inline LosslessReport lossless_check(const ActuatorSpec& spec, double rel_tol = 1e-12) {
    LosslessReport rep;
    if (!(spec.K_mm >= 0.0))
        rep.violations.push_back("K_mm >= 0 (got " + std::to_string(spec.K_mm) + ")");
    if (!(spec.K_ee >= 0.0))
        rep.violations.push_back("K_ee >= 0 (got " + std::to_string(spec.K_ee) + ")");
    const double scale = std::max({std::abs(spec.K_em), std::abs(spec.K_me), 1e-300});
    if (std::abs(spec.K_em + spec.K_me) > rel_tol * scale)
        rep.violations.push_back("K_em = -K_me (got K_em=" + std::to_string(spec.K_em) +
                                 ", K_me=" + std::to_string(spec.K_me) + ")");
    rep.passed = rep.violations.empty();
    return rep;
}

// Capacitance per unit length of the smeared actuator layer, F/m. A zero
// K_ee is legal here (degenerate layer with no electrical storage) but is
// rejected by every downstream operation that divides by it.
inline double capacitance_per_length(const ActuatorSpec& spec) {
    if (!(spec.l_p > 0.0)) throw domain_error("capacitance_per_length: l_p must be > 0");
    return spec.K_ee / spec.l_p;
}

// Bending stiffness contributed by the piezo layer itself, N*m^2.
inline double layer_bending_stiffness(const ActuatorSpec& spec) {
    return spec.K_mm * spec.l_p;
}

// Effective bending stiffness entering the coupled equations: the beam's own
// k_M, plus the layer stiffness unless it is flagged negligible.
inline double effective_bending_stiffness(const ActuatorSpec& spec, const BeamSpec& beam) {
    double k = beam.k_M;
    if (!spec.neglect_layer_stiffness) k += layer_bending_stiffness(spec);
    return k;
}

// Dimensionless electromechanical coupling strength
//   rho = (K_em * l^2) / (t0 * k_M_eff) * sqrt(lambda / k_ee).
// It multiplies the gyroscopic cross terms of the coupled modal oscillators,
// so it directly sets the mechanical-to-electrical energy transfer rate.
inline double coupling_rho(const ActuatorSpec& spec, const BeamSpec& beam) {
    beam.validate();
    const double k_ee = capacitance_per_length(spec);
    if (!(k_ee > 0.0)) throw domain_error("coupling_rho: capacitance per length must be > 0");
    const double k_M_eff = effective_bending_stiffness(spec, beam);
    return spec.K_em * beam.l * beam.l / (beam.t0 * k_M_eff) * std::sqrt(beam.lambda / k_ee);
}

// Inverse design: the K_em needed to hit a prescribed rho on a given beam.
inline double coupling_K_em_for_rho(double rho, const ActuatorSpec& spec, const BeamSpec& beam) {
    beam.validate();
    const double k_ee = capacitance_per_length(spec);
    if (!(k_ee > 0.0)) throw domain_error("coupling_K_em_for_rho: capacitance per length must be > 0");
    const double k_M_eff = effective_bending_stiffness(spec, beam);
    return rho * beam.t0 * k_M_eff / (beam.l * beam.l) * std::sqrt(k_ee / beam.lambda);
}

// Voltage scale mapping dimensionless port voltages to physical volts:
//   V0 = (kappa0 * r0) / (sqrt(2) * t0) * sqrt(lambda / k_ee).
inline double characteristic_voltage(const ActuatorSpec& spec, const BeamSpec& beam,
                                     double kappa0) {
    beam.validate();
    if (!(kappa0 > 0.0)) throw domain_error("characteristic_voltage: kappa0 must be > 0");
    if (!(beam.r0 > 0.0)) throw domain_error("characteristic_voltage: beam r0 must be > 0");
    const double k_ee = capacitance_per_length(spec);
    if (!(k_ee > 0.0)) throw domain_error("characteristic_voltage: capacitance per length must be > 0");
    return kappa0 * beam.r0 / (std::sqrt(2.0) * beam.t0) * std::sqrt(beam.lambda / k_ee);
}

// Derived coupling constants bundled for reporting and simulation setup.
struct CouplingConstants {
    double rho = 0.0;      // dimensionless coupling strength
    double V0 = 0.0;       // characteristic voltage, V
    double k_ee = 0.0;     // layer capacitance per length, F/m
    double k_mm = 0.0;     // layer bending stiffness, N*m^2
    double k_M_eff = 0.0;  // effective bending stiffness used in the moment law
};

inline CouplingConstants coupling_constants(const ActuatorSpec& spec, const BeamSpec& beam,
                                            double kappa0) {
    CouplingConstants c;
    c.k_ee = capacitance_per_length(spec);
    c.k_mm = layer_bending_stiffness(spec);
    c.k_M_eff = effective_bending_stiffness(spec, beam);
    c.rho = coupling_rho(spec, beam);
    c.V0 = characteristic_voltage(spec, beam, kappa0);
    return c;
}

// Bending moment with the piezoelectric indirect effect folded in:
//   M(x,t) = (k_mm + k_M) u''(x,t) + K_me V_p(x,t),
// with k_mm dropped under the neglect flag. Affine in both arguments.
inline double effective_bending_moment(double u_xx, double V_p, const ActuatorSpec& spec,
                                       const BeamSpec& beam) {
    return effective_bending_stiffness(spec, beam) * u_xx + spec.K_me * V_p;
}

// Actuator terminal voltage from the dimensionless voltage across a module's
// first port: phi_p = -(sqrt(2)/kappa0) * phi.
inline double actuator_port_voltage(double phi, double kappa0) {
    if (!(kappa0 > 0.0)) throw domain_error("actuator_port_voltage: kappa0 must be > 0");
    return -std::sqrt(2.0) / kappa0 * phi;
}

// Instantaneous two-port power flowing into the actuator for given states and
// rates. For a lossless spec this equals the time derivative of the stored
// energy 0.5*K_mm*chi^2 + 0.5*K_ee*V_p^2 along any trajectory.
inline double actuator_power(double chi, double chi_dot, double V_p, double V_p_dot,
                             const ActuatorSpec& spec) {
    const double M = spec.K_mm * chi + spec.K_me * V_p;
    const double Q_dot = spec.K_em * chi_dot + spec.K_ee * V_p_dot;
    return M * chi_dot + V_p * Q_dot;
}

inline double actuator_stored_energy(double chi, double V_p, const ActuatorSpec& spec) {
    return 0.5 * spec.K_mm * chi * chi + 0.5 * spec.K_ee * V_p * V_p;
}

}  // namespace pemb
