#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "pemb/errors.hpp"

namespace pemb {

// Per-mode state of the coupled beam/circuit pair: u is the mechanical
// displacement coefficient, psi the flux-linkage coefficient (time integral
// of the dimensionless voltage coefficient), both functions of the
// dimensionless time tau. psidot is therefore the modal voltage itself.
struct ModalState {
    int m = 1;
    double u = 0.0;
    double udot = 0.0;
    double psi = 0.0;
    double psidot = 0.0;
};

// Gyroscopically coupled oscillator pair for one sine mode:
//   beta^2 * u''  + (m pi)^4 u  - rho (m pi)^2 psi' = 0
//   beta^2 * psi'' + (m pi)^4 psi + rho (m pi)^2 u'  = 0
// The cross terms are skew (lossless), so the total modal energy is an exact
// invariant; rho only routes energy between the mechanical and electrical
// halves. With rho=0 the pair decouples into two oscillators at (m pi)^2/beta.
struct ModeSystem {
    int m = 1;
    double beta = 1.0;
    double rho = 0.0;
    double stiffness = 0.0;   // (m pi)^4
    double gyroscopic = 0.0;  // rho (m pi)^2

    double omega0() const { return stiffness > 0.0 ? std::sqrt(stiffness) / beta : 0.0; }
    // Frequency splitting rate: the two circular eigenfrequencies are
    // R +/- gamma/2 with R = sqrt(omega0^2 + gamma^2/4); their difference
    // gamma sets the beat between the mechanical and electrical envelopes.
    double gamma() const { return gyroscopic / (beta * beta); }
    double carrier() const { const double g = gamma(); return std::hypot(omega0(), 0.5 * g); }
    double split_high() const { return carrier() + 0.5 * gamma(); }
    double split_low() const { return carrier() - 0.5 * gamma(); }
    // Time of the first complete mechanical-to-electrical energy transfer.
    double transfer_time() const {
        const double g = gamma();
        return g > 0.0 ? std::numbers::pi / g : std::numeric_limits<double>::infinity();
    }
};

inline ModeSystem mode_ode(int m, double beta, double rho) {
    if (m < 1) throw domain_error("mode_ode: mode index must be >= 1");
    if (!(beta > 0.0)) throw domain_error("mode_ode: beta must be > 0");
    if (!(rho >= 0.0)) throw domain_error("mode_ode: rho must be >= 0");
    ModeSystem sys;
    sys.m = m;
    sys.beta = beta;
    sys.rho = rho;
    const double mpi2 = (m * std::numbers::pi) * (m * std::numbers::pi);
    sys.stiffness = mpi2 * mpi2;
    sys.gyroscopic = rho * mpi2;
    return sys;
}

// Energy split of one mode: mechanical = kinetic + elastic part carried by u,
// electrical = the mirror quantities carried by psi. Their sum is conserved.
inline std::pair<double, double> energy_partition(const ModalState& st, const ModeSystem& sys) {
    const double b2 = sys.beta * sys.beta;
    const double e_mech = 0.5 * b2 * st.udot * st.udot + 0.5 * sys.stiffness * st.u * st.u;
    const double e_elec = 0.5 * b2 * st.psidot * st.psidot + 0.5 * sys.stiffness * st.psi * st.psi;
    return {e_mech, e_elec};
}

inline double total_energy(const ModalState& st, const ModeSystem& sys) {
    const auto [em, ee] = energy_partition(st, sys);
    return em + ee;
}

struct Trajectory {
    std::vector<double> tau;
    std::vector<ModalState> states;
    double max_energy_drift = 0.0;  // max |E(t)-E(0)| / E(0) over the run
};

namespace detail {

// One-step propagator for the scaled state y = (w0*u, w0*psi, udot, psidot),
// whose generator is skew-symmetric. The diagonal Pade approximant
//   S = (I - hG/2 + (hG)^2/12)^(-1) (I + hG/2 + (hG)^2/12)
// of exp(hG) maps skew generators to exactly orthogonal steps, so the modal
// energy (proportional to |y|^2) is preserved to roundoff while the step
// itself is fourth-order accurate.
inline Eigen::Matrix4d mode_step_matrix(const ModeSystem& sys, double dt) {
    const double w0 = sys.omega0();
    const double g = sys.gamma();
    Eigen::Matrix4d G;
    G << 0.0, 0.0, w0, 0.0,
         0.0, 0.0, 0.0, w0,
         -w0, 0.0, 0.0, g,
         0.0, -w0, -g, 0.0;
    const Eigen::Matrix4d H = dt * G;
    const Eigen::Matrix4d H2 = H * H;
    const Eigen::Matrix4d I = Eigen::Matrix4d::Identity();
    const Eigen::Matrix4d P = I + 0.5 * H + H2 / 12.0;
    const Eigen::Matrix4d Q = I - 0.5 * H + H2 / 12.0;
    return Q.partialPivLu().solve(P);
}

}  // namespace detail

// Fixed-step integration of one mode. The step must resolve the faster split
// frequency with at least 40 samples per period; coarser requests are refused
// with the required step attached, because the energy-drift contract of the
// trajectory cannot be honored otherwise.
inline Trajectory integrate(const ModeSystem& sys, const ModalState& initial, double t_end,
                            double dt) {
    if (!(t_end > 0.0)) throw domain_error("integrate: t_end must be > 0");
    if (!(dt > 0.0)) throw domain_error("integrate: dt must be > 0");
    const double w_fast = sys.split_high();
    if (w_fast > 0.0) {
        const double required = 2.0 * std::numbers::pi / w_fast / 40.0;
        if (dt > required)
            throw timestep_error("integrate: dt too coarse for the fastest split frequency",
                                 required);
    }
    if (initial.m != sys.m)
        throw domain_error("integrate: initial state mode index does not match the system");

    const double w0 = sys.omega0();
    const Eigen::Matrix4d S = detail::mode_step_matrix(sys, dt);
    const auto n_steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-12));

    Trajectory out;
    out.tau.reserve(n_steps + 1);
    out.states.reserve(n_steps + 1);

    Eigen::Vector4d y(w0 * initial.u, w0 * initial.psi, initial.udot, initial.psidot);
    const double e0 = total_energy(initial, sys);
    double drift = 0.0;

    for (std::size_t k = 0; k <= n_steps; ++k) {
        ModalState st;
        st.m = sys.m;
        st.u = w0 > 0.0 ? y(0) / w0 : 0.0;
        st.psi = w0 > 0.0 ? y(1) / w0 : 0.0;
        st.udot = y(2);
        st.psidot = y(3);
        out.tau.push_back(k * dt);
        out.states.push_back(st);
        if (e0 > 0.0) drift = std::max(drift, std::abs(total_energy(st, sys) - e0) / e0);
        if (k < n_steps) y = S * y;
    }
    out.max_energy_drift = drift;
    return out;
}

// Initial deflection shape on [0,1]. Breakpoints mark interior kinks so the
// projection quadrature can integrate each smooth piece separately.
struct DeflectionProfile {
    std::function<double(double)> w;
    std::vector<double> breakpoints;
};

inline DeflectionProfile sine_profile(std::vector<std::pair<int, double>> terms) {
    return DeflectionProfile{
        [terms = std::move(terms)](double eps) {
            double s = 0.0;
            for (const auto& [m, a] : terms) s += a * std::sin(m * std::numbers::pi * eps);
            return s;
        },
        {}};
}

// Hat function: rises linearly to height at the apex, falls linearly to the
// far end. Its sine coefficients decay as 1/m^2 with alternating signs.
inline DeflectionProfile triangular_profile(double height, double apex = 0.5) {
    if (!(apex > 0.0) || !(apex < 1.0))
        throw domain_error("triangular_profile: apex must lie strictly inside (0,1)");
    return DeflectionProfile{
        [height, apex](double eps) {
            return eps <= apex ? height * eps / apex : height * (1.0 - eps) / (1.0 - apex);
        },
        {apex}};
}

struct ProjectionResult {
    std::vector<ModalState> states;        // u_m set, everything else quiescent
    double reconstruction_error = 0.0;     // relative L2 error of the truncated series
};

namespace detail {

// Composite 10-point Gauss-Legendre quadrature over [0,1] split at the
// profile breakpoints, each piece further divided into enough panels to
// resolve the highest retained mode.
inline double profile_quadrature(const DeflectionProfile& profile, int n_modes,
                                 const std::function<double(double)>& integrand) {
    static const double xs[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                 0.8650633666889845, 0.9739065285171717};
    static const double ws[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                 0.1494513491505806, 0.0666713443086881};
    std::vector<double> edges{0.0};
    for (double b : profile.breakpoints)
        if (b > 0.0 && b < 1.0) edges.push_back(b);
    edges.push_back(1.0);
    std::sort(edges.begin(), edges.end());

    const int panels_per_piece = std::max(8, 2 * n_modes);
    double total = 0.0;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double piece_len = (edges[e + 1] - edges[e]) / panels_per_piece;
        for (int p = 0; p < panels_per_piece; ++p) {
            const double mid = edges[e] + (p + 0.5) * piece_len;
            const double half = 0.5 * piece_len;
            for (int q = 0; q < 5; ++q) {
                total += half * ws[q] * integrand(mid + half * xs[q]);
                total += half * ws[q] * integrand(mid - half * xs[q]);
            }
        }
    }
    return total;
}

}  // namespace detail

// Sine-series projection of an initial deflection: u_m = 2 Int w sin(m pi e).
// The beam starts at rest with all electrical storage discharged, so every
// other state component is zero. The truncation quality is reported as the
// relative L2 distance between the profile and the retained partial sum.
inline ProjectionResult project_initial_conditions(const DeflectionProfile& profile,
                                                   int n_modes) {
    if (n_modes < 1) throw domain_error("project_initial_conditions: n_modes must be >= 1");
    const double end0 = profile.w(0.0);
    const double end1 = profile.w(1.0);
    if (std::abs(end0) > 1e-6 || std::abs(end1) > 1e-6)
        throw domain_error(
            "project_initial_conditions: profile must vanish at both supports "
            "(|w(0)|=" + std::to_string(std::abs(end0)) +
            ", |w(1)|=" + std::to_string(std::abs(end1)) + ")");

    ProjectionResult res;
    res.states.reserve(static_cast<std::size_t>(n_modes));
    for (int m = 1; m <= n_modes; ++m) {
        const double um = 2.0 * detail::profile_quadrature(profile, n_modes, [&](double eps) {
            return profile.w(eps) * std::sin(m * std::numbers::pi * eps);
        });
        ModalState st;
        st.m = m;
        st.u = um;
        res.states.push_back(st);
    }

    const double norm2 = detail::profile_quadrature(profile, n_modes, [&](double eps) {
        const double v = profile.w(eps);
        return v * v;
    });
    const double err2 = detail::profile_quadrature(profile, n_modes, [&](double eps) {
        double partial = 0.0;
        for (const auto& st : res.states)
            partial += st.u * std::sin(st.m * std::numbers::pi * eps);
        const double d = profile.w(eps) - partial;
        return d * d;
    });
    res.reconstruction_error = norm2 > 0.0 ? std::sqrt(std::max(0.0, err2) / norm2) : 0.0;
    return res;
}

// Integrate several modes side by side. The modal systems share no state, so
// this is a plain loop; cross-mode interaction is impossible by construction.
inline std::vector<Trajectory> integrate_modes(const std::vector<ModeSystem>& systems,
                                               const std::vector<ModalState>& initials,
                                               double t_end, double dt) {
    if (systems.size() != initials.size())
        throw domain_error("integrate_modes: one initial state per system required");
    std::vector<Trajectory> runs;
    runs.reserve(systems.size());
    for (std::size_t i = 0; i < systems.size(); ++i)
        runs.push_back(integrate(systems[i], initials[i], t_end, dt));
    return runs;
}

// Largest relative excursion of any single mode's energy over its run,
// normalized by the total initial energy of the ensemble. Because the modes
// integrate independently, this certifies the block-diagonal architecture;
// any nonzero value is pure integrator roundoff.
inline double spillover_check(const std::vector<Trajectory>& runs,
                              const std::vector<ModeSystem>& systems) {
    if (runs.size() < 2 || runs.size() != systems.size())
        throw domain_error("spillover_check: needs >= 2 matching runs and systems");
    double e_total = 0.0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (runs[i].states.empty()) throw domain_error("spillover_check: empty trajectory");
        e_total += total_energy(runs[i].states.front(), systems[i]);
    }
    if (!(e_total > 0.0)) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const double e0 = total_energy(runs[i].states.front(), systems[i]);
        for (const auto& st : runs[i].states)
            worst = std::max(worst, std::abs(total_energy(st, systems[i]) - e0) / e_total);
    }
    return worst;
}

}  // namespace pemb
