#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pemb/beam.hpp"
#include "pemb/errors.hpp"
#include "pemb/mobility.hpp"

namespace pemb {

// Winding-ratio matrices of the two ideal multiport transformers realizing
// one module: T0 couples the module ports to the capacitive terminations
// (pole at zero), Tinf to the inductive terminations (pole at infinity).
// Rows are secondary windings, columns are port windings. kappa0 and kappainf
// are free positive scale constants; only their ratio enters the component
// values, their absolute size moves the turns ratios.
struct TurnsRatioPair {
    Eigen::Matrix<double, 2, 4> T0;
    Eigen::Matrix4d Tinf;
    double kappa0 = 0.0;
    double kappainf = 0.0;
};

// Linearized-in-delta turns ratios. The row patterns are the terminal
// patterns of the residue eigenvectors: T0 carries rigid translation and
// rotation about the element midpoint, Tinf carries the four elastic
// patterns, with the off-diagonal slopes delta/2, delta/6 and 3*delta/34.
inline TurnsRatioPair turns_ratio_matrices(double delta, double kappa0, double kappainf) {
    if (!(delta > 0.0)) throw domain_error("turns_ratio_matrices: delta must be > 0");
    if (!(kappa0 > 0.0) || !(kappainf > 0.0))
        throw domain_error("turns_ratio_matrices: kappa scales must be > 0");
    const double s0 = kappa0 / std::numbers::sqrt2;
    const double si = kappainf / std::numbers::sqrt2;
    const double d = delta;
    TurnsRatioPair t;
    t.kappa0 = kappa0;
    t.kappainf = kappainf;
    t.T0 << s0 * 1.0, 0.0, s0 * 1.0, 0.0,
            s0 * -d / 2.0, s0 * 1.0, s0 * d / 2.0, s0 * 1.0;
    t.Tinf << si * d / 6.0, si * -1.0, si * d / 6.0, si * 1.0,
              si * 1.0, si * d / 6.0, si * 1.0, si * -d / 6.0,
              si * -3.0 * d / 34.0, si * 1.0, si * 3.0 * d / 34.0, si * 1.0,
              si * 1.0, si * 3.0 * d / 34.0, si * -1.0, si * 3.0 * d / 34.0;
    return t;
}

// One synthesized cell of the beam-analog line: two capacitors behind T0, four
// inductors behind Tinf, both transformer networks port-series connected.
// zeta_sq is the squared time scale tying the inductor products to the chosen
// C1 (units s^2).
struct CircuitModule {
    double C1 = 0.0, C2 = 0.0;          // F
    double L1 = 0.0, L2 = 0.0, L3 = 0.0, L4 = 0.0;  // H
    TurnsRatioPair turns;
    double zeta_sq = 0.0;               // s^2
    double delta = 0.0;

    std::array<double, 2> capacitors() const { return {C1, C2}; }
    std::array<double, 4> inductors() const { return {L1, L2, L3, L4}; }
};

// Component values from the chosen C1:
//   zeta^2 = (kappa0/kappainf)^2 * (lambda/k_M) * (delta*l)^4
//   C2 = C1*delta^2/12, L2 = zeta^2/(720*C1), L4 = zeta^2/(4080*C1),
//   L1 = zeta^2/(48*C2),  L3 = 17*zeta^2/(1680*C2).
// Inductor w terminates row w of Tinf, capacitor j row j of T0.
inline CircuitModule component_values(double delta, const BeamSpec& spec,
                                      double kappa0, double kappainf, double C1) {
    spec.validate();
    if (!(delta > 0.0)) throw domain_error("component_values: delta must be > 0");
    if (!(kappa0 > 0.0) || !(kappainf > 0.0))
        throw domain_error("component_values: kappa scales must be > 0");
    if (!(C1 > 0.0)) throw domain_error("component_values: C1 must be > 0");

    CircuitModule m;
    m.delta = delta;
    m.turns = turns_ratio_matrices(delta, kappa0, kappainf);
    const double ratio = kappa0 / kappainf;
    const double dl = delta * spec.l;
    m.zeta_sq = ratio * ratio * (spec.lambda / spec.k_M) * dl * dl * dl * dl;
    m.C1 = C1;
    m.C2 = C1 * delta * delta / 12.0;
    m.L1 = m.zeta_sq / (48.0 * m.C2);
    m.L2 = m.zeta_sq / (720.0 * m.C1);
    m.L3 = 17.0 * m.zeta_sq / (1680.0 * m.C2);
    m.L4 = m.zeta_sq / (4080.0 * m.C1);
    return m;
}

// Full module synthesis: turns ratios plus component values. The returned
// module realizes the two-pole truncation of the element mobility: its
// dimensionless port impedance equals K0/eta + eta*Kinf at the linearized
// delta order (checked by the test suite via nodal analysis of the netlist).
inline CircuitModule synthesize_module(double delta, const BeamSpec& spec,
                                       double kappa0, double kappainf, double C1) {
    return component_values(delta, spec, kappa0, kappainf, C1);
}

// Dimensionless element values of a module and the impedance scale Z0 tying
// the physical netlist back to the dimensionless mobility:
//   Z = Z0 * M(eta), eta = s*t0, Cd = C*Z0/t0, Ld = L/(Z0*t0).
struct DimensionlessModule {
    double C1d, C2d;
    std::array<double, 4> Ld;
    double Z0;  // ohm
};

inline DimensionlessModule dimensionless_values(const CircuitModule& m, double beta_value,
                                                double t0) {
    if (!(beta_value > 0.0) || !(t0 > 0.0))
        throw domain_error("dimensionless_values: beta and t0 must be > 0");
    DimensionlessModule d;
    d.Z0 = m.turns.kappa0 * m.turns.kappa0 * beta_value * beta_value * m.delta * t0 /
           (2.0 * m.C1);
    d.C1d = m.C1 * d.Z0 / t0;
    d.C2d = m.C2 * d.Z0 / t0;
    const auto ls = m.inductors();
    for (int w = 0; w < 4; ++w) d.Ld[static_cast<std::size_t>(w)] = ls[static_cast<std::size_t>(w)] / (d.Z0 * t0);
    return d;
}

// Hardware bounds a realizable module must satisfy: every inductor under
// 10 mH, every capacitor at most 100 nF, and every nonzero turns-ratio entry
// with magnitude inside [0.1, 10].
inline constexpr double kMaxInductanceH = 10e-3;
inline constexpr double kMaxCapacitanceF = 100e-9;
inline constexpr double kTurnsRatioMin = 0.1;
inline constexpr double kTurnsRatioMax = 10.0;

struct FeasibilityReport {
    bool inductors_ok = true;
    bool capacitors_ok = true;
    bool turns_ok = true;
    // Violating quantities by name with their values.
    std::vector<std::pair<std::string, double>> violations;

    bool all_ok() const { return inductors_ok && capacitors_ok && turns_ok; }

    std::string to_string() const {
        std::ostringstream os;
        auto line = [&os](const char* name, bool ok) {
            os << name << ": " << (ok ? "PASS" : "FAIL") << "\n";
        };
        line("inductors under 10 mH", inductors_ok);
        line("capacitors at most 100 nF", capacitors_ok);
        line("turns-ratio magnitudes in [0.1, 10]", turns_ok);
        if (!violations.empty()) {
            os << "violations:\n";
            for (const auto& [name, value] : violations) {
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%.11e", value);
                os << "  " << name << " = " << buf << "\n";
            }
        }
        return os.str();
    }
};

inline FeasibilityReport feasibility_check(const CircuitModule& m) {
    FeasibilityReport rep;
    const char* lnames[] = {"L1", "L2", "L3", "L4"};
    const auto ls = m.inductors();
    for (int w = 0; w < 4; ++w) {
        if (!(ls[static_cast<std::size_t>(w)] < kMaxInductanceH)) {
            rep.inductors_ok = false;
            rep.violations.emplace_back(lnames[w], ls[static_cast<std::size_t>(w)]);
        }
    }
    const char* cnames[] = {"C1", "C2"};
    const auto cs = m.capacitors();
    for (int j = 0; j < 2; ++j) {
        if (!(cs[static_cast<std::size_t>(j)] <= kMaxCapacitanceF)) {
            rep.capacitors_ok = false;
            rep.violations.emplace_back(cnames[j], cs[static_cast<std::size_t>(j)]);
        }
    }
    auto scan = [&rep](const char* name, const Eigen::Ref<const Eigen::MatrixXd>& T) {
        for (Eigen::Index r = 0; r < T.rows(); ++r) {
            for (Eigen::Index c = 0; c < T.cols(); ++c) {
                const double mag = std::abs(T(r, c));
                if (mag == 0.0) continue;  // structural zeros are exempt
                if (mag < kTurnsRatioMin || mag > kTurnsRatioMax) {
                    rep.turns_ok = false;
                    std::ostringstream nm;
                    nm << name << "[" << r << "][" << c << "]";
                    rep.violations.emplace_back(nm.str(), T(r, c));
                }
            }
        }
    };
    scan("T0", m.turns.T0);
    scan("Tinf", m.turns.Tinf);
    return rep;
}

}  // namespace pemb
