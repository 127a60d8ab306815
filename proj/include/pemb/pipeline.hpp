#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "pemb/beam.hpp"
#include "pemb/config.hpp"
#include "pemb/errors.hpp"
#include "pemb/mobility.hpp"
#include "pemb/modal.hpp"
#include "pemb/netlist.hpp"
#include "pemb/piezo.hpp"
#include "pemb/synthesis.hpp"

namespace pemb {

namespace detail {

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);  // binary: keep LF endings everywhere
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline std::string format_int(int v) { return std::to_string(v); }

}  // namespace detail

// ---------------------------------------------------------------------------
// synth: netlist plus feasibility report
// ---------------------------------------------------------------------------

struct SynthResult {
    CircuitModule module;
    FeasibilityReport feasibility;
    std::filesystem::path netlist_path;
    std::filesystem::path feasibility_path;
};

inline SynthResult run_synth(const ProjectConfig& cfg) {
    const double delta = 1.0 / cfg.synthesis.n_modules;
    SynthResult res;
    res.module = component_values(delta, cfg.beam, cfg.synthesis.kappa0, cfg.synthesis.kappainf,
                                  cfg.synthesis.C1_F);
    const Netlist net = assemble_line(cfg.synthesis.n_modules, res.module,
                                      {cfg.synthesis.boundary, cfg.synthesis.boundary});
    res.feasibility = feasibility_check(res.module);

    const std::filesystem::path dir(cfg.output_directory);
    std::filesystem::create_directories(dir);
    res.netlist_path = dir / "netlist.net";
    res.feasibility_path = dir / "feasibility.txt";
    detail::write_text_file(res.netlist_path, export_netlist(net));

    std::string rep;
    rep += "line synthesis: n=" + detail::format_int(cfg.synthesis.n_modules) +
           " delta=" + detail::format_value(delta) + "\n";
    rep += "kappa0=" + detail::format_value(cfg.synthesis.kappa0) +
           " kappainf=" + detail::format_value(cfg.synthesis.kappainf) +
           " C1=" + detail::format_value(cfg.synthesis.C1_F) + " F\n";
    rep += "components per module:\n";
    rep += "  C1 = " + detail::format_value(res.module.C1) + " F\n";
    rep += "  C2 = " + detail::format_value(res.module.C2) + " F\n";
    rep += "  L1 = " + detail::format_value(res.module.L1) + " H\n";
    rep += "  L2 = " + detail::format_value(res.module.L2) + " H\n";
    rep += "  L3 = " + detail::format_value(res.module.L3) + " H\n";
    rep += "  L4 = " + detail::format_value(res.module.L4) + " H\n";
    rep += res.feasibility.to_string();
    rep += "\n";
    detail::write_text_file(res.feasibility_path, rep);
    return res;
}

// ---------------------------------------------------------------------------
// simulate: per-mode CSV trajectories plus a summary
// ---------------------------------------------------------------------------

struct ModeSummary {
    int m = 0;
    double predicted_transfer_time = std::numeric_limits<double>::infinity();
    double measured_transfer_time = std::numeric_limits<double>::quiet_NaN();
    bool transfer_measured = false;
    double max_elec_fraction = 0.0;  // max over the run of E_elec / E_total
    double max_drift = 0.0;
};

struct SimResult {
    std::vector<ModeSummary> modes;
    double rho = 0.0;
    double V0 = 0.0;
    double peak_voltage_V = 0.0;
    double v_max_V = 0.0;
    double max_energy_drift = 0.0;
    double spillover = 0.0;
    double dt = 0.0;
    double t_end = 0.0;
    std::vector<std::filesystem::path> csv_paths;
    std::filesystem::path summary_path;
};

namespace detail {

// Locate the first deep null of the mechanical energy: the first contiguous
// region where E_mech drops below 1% of its initial value, refined by a
// parabola through the discrete minimum. The fast carrier ripple cancels at
// the null, so this estimator reproduces the analytic transfer time to well
// under the sampling step.
inline std::pair<bool, double> measure_transfer_time(const Trajectory& run,
                                                     const ModeSystem& sys) {
    const auto n = run.states.size();
    if (n < 3) return {false, 0.0};
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = energy_partition(run.states[i], sys).first;
    const double e0 = e[0];
    if (!(e0 > 0.0)) return {false, 0.0};
    const double thresh = 0.01 * e0;
    std::size_t k0 = 0;
    while (k0 < n && e[k0] >= thresh) ++k0;
    if (k0 == n) return {false, 0.0};
    std::size_t k1 = k0;
    while (k1 + 1 < n && e[k1 + 1] < thresh) ++k1;
    std::size_t k = k0;
    for (std::size_t i = k0; i <= k1; ++i)
        if (e[i] < e[k]) k = i;
    double t = run.tau[k];
    if (k > 0 && k + 1 < n) {
        const double y0 = e[k - 1], y1 = e[k], y2 = e[k + 1];
        const double denom = y0 - 2.0 * y1 + y2;
        if (denom > 0.0) {
            const double shift = 0.5 * (y0 - y2) / denom;
            t += shift * (run.tau[1] - run.tau[0]);
        }
    }
    return {true, t};
}

}  // namespace detail

// Build the dimensionless initial modal states requested by the config.
// Physical profile amplitudes (meters) are scaled by the beam's radius of
// gyration; direct modal specifications are taken as already dimensionless.
inline std::vector<ModalState> initial_states_from_config(const ProjectConfig& cfg,
                                                          const std::vector<int>& modes) {
    const ProfileConfig& prof = cfg.simulation.profile;
    std::vector<ModalState> states;
    states.reserve(modes.size());

    if (prof.type == "modal") {
        for (int m : modes) {
            ModalState st;
            st.m = m;
            for (const auto& [pm, u] : prof.modal_u)
                if (pm == m) st.u = u;
            states.push_back(st);
        }
        return states;
    }
    if (prof.type == "modal_energy") {
        for (int m : modes) {
            ModalState st;
            st.m = m;
            if (std::find(prof.energy_modes.begin(), prof.energy_modes.end(), m) !=
                prof.energy_modes.end()) {
                const double mpi2 = (m * std::numbers::pi) * (m * std::numbers::pi);
                st.u = std::sqrt(2.0) / mpi2;  // unit modal potential energy
            }
            states.push_back(st);
        }
        return states;
    }

    if (!(cfg.beam.r0 > 0.0))
        throw domain_error("initial profile: beam radius of gyration must be > 0 "
                           "to scale a physical deflection");
    DeflectionProfile profile;
    int top_mode = *std::max_element(modes.begin(), modes.end());
    if (prof.type == "sine") {
        std::vector<std::pair<int, double>> dimless;
        dimless.reserve(prof.sine_terms.size());
        for (const auto& [m, amp] : prof.sine_terms) {
            dimless.emplace_back(m, amp / cfg.beam.r0);
            top_mode = std::max(top_mode, m);
        }
        profile = sine_profile(std::move(dimless));
    } else {  // triangular; parse_profile guarantees the type set
        profile = triangular_profile(prof.height_m / cfg.beam.r0, prof.apex);
    }
    const ProjectionResult proj = project_initial_conditions(profile, top_mode);
    for (int m : modes) {
        ModalState st = proj.states[static_cast<std::size_t>(m - 1)];
        states.push_back(st);
    }
    return states;
}

inline SimResult run_simulate(const ProjectConfig& cfg) {
    const double beta_value = beta(cfg.beam);

    SimResult res;
    res.rho = cfg.simulation.rho_override ? *cfg.simulation.rho_override
                                          : coupling_rho(cfg.actuator, cfg.beam);
    res.V0 = characteristic_voltage(cfg.actuator, cfg.beam, cfg.synthesis.kappa0);
    res.v_max_V = cfg.actuator.V_max;

    std::vector<int> modes = cfg.simulation.modes;
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());

    std::vector<ModeSystem> systems;
    systems.reserve(modes.size());
    for (int m : modes) systems.push_back(mode_ode(m, beta_value, res.rho));
    const std::vector<ModalState> initials = initial_states_from_config(cfg, modes);

    // Step resolves the fastest split; horizon covers the slowest transfer,
    // or ten periods of the slowest mode when the coupling is off.
    double w_fast = 0.0;
    double horizon = 0.0;
    for (const auto& sys : systems) {
        w_fast = std::max(w_fast, sys.split_high());
        if (std::isfinite(sys.transfer_time()))
            horizon = std::max(horizon, 1.25 * sys.transfer_time());
    }
    if (horizon == 0.0) {
        double slowest = std::numeric_limits<double>::infinity();
        for (const auto& sys : systems) slowest = std::min(slowest, sys.omega0());
        horizon = 10.0 * 2.0 * std::numbers::pi / slowest;
    }
    res.dt = cfg.simulation.dt ? *cfg.simulation.dt
                               : 2.0 * std::numbers::pi / w_fast / 80.0;
    res.t_end = cfg.simulation.t_end ? *cfg.simulation.t_end : horizon;

    const std::vector<Trajectory> runs = integrate_modes(systems, initials, res.t_end, res.dt);

    const std::filesystem::path dir(cfg.output_directory);
    std::filesystem::create_directories(dir);

    std::string summary;
    summary += "simulation: beta=" + detail::format_value(beta_value) +
               " rho=" + detail::format_value(res.rho) +
               " dt=" + detail::format_value(res.dt) +
               " t_end=" + detail::format_value(res.t_end) + "\n";
    summary += "voltage scale V0=" + detail::format_value(res.V0) + " V, rated V_max=" +
               detail::format_value(res.v_max_V) + " V\n";

    for (std::size_t i = 0; i < runs.size(); ++i) {
        const ModeSystem& sys = systems[i];
        const Trajectory& run = runs[i];

        ModeSummary ms;
        ms.m = sys.m;
        ms.predicted_transfer_time = sys.transfer_time();
        ms.max_drift = run.max_energy_drift;
        const double e0 = total_energy(run.states.front(), sys);
        for (const auto& st : run.states) {
            const auto [em, ee] = energy_partition(st, sys);
            (void)em;
            if (e0 > 0.0) ms.max_elec_fraction = std::max(ms.max_elec_fraction, ee / e0);
        }
        const auto [found, t_meas] = detail::measure_transfer_time(run, sys);
        ms.transfer_measured = found;
        if (found) ms.measured_transfer_time = t_meas;
        res.modes.push_back(ms);
        res.max_energy_drift = std::max(res.max_energy_drift, run.max_energy_drift);

        const std::filesystem::path csv = dir / ("mode_" + detail::format_int(sys.m) + ".csv");
        std::string body = "tau,u,udot,psi,psidot,E_mech,E_elec\n";
        for (std::size_t k = 0; k < run.states.size(); ++k) {
            const ModalState& st = run.states[k];
            const auto [em, ee] = energy_partition(st, sys);
            body += detail::format_value(run.tau[k]) + ',' + detail::format_value(st.u) + ',' +
                    detail::format_value(st.udot) + ',' + detail::format_value(st.psi) + ',' +
                    detail::format_value(st.psidot) + ',' + detail::format_value(em) + ',' +
                    detail::format_value(ee) + '\n';
        }
        detail::write_text_file(csv, body);
        res.csv_paths.push_back(csv);

        summary += "mode " + detail::format_int(sys.m) + ":";
        if (res.rho == 0.0) {
            summary += " no transfer (rho = 0; peak electrical fraction " +
                       detail::format_value(ms.max_elec_fraction) + ")";
        } else if (!found) {
            summary += " transfer not completed within t_end (predicted " +
                       detail::format_value(ms.predicted_transfer_time) + ")";
        } else {
            const double period = 2.0 * std::numbers::pi / sys.omega0();
            summary += " transfer time " + detail::format_value(t_meas) + " (predicted " +
                       detail::format_value(ms.predicted_transfer_time) + ", " +
                       detail::format_value(t_meas / period) + " modal periods)";
        }
        summary += ", max energy drift " + detail::format_value(run.max_energy_drift) + "\n";
    }

    // Peak physical actuator voltage: modal voltage coefficients map through
    // phi_p = -(sqrt2/kappa0) phi and the voltage scale V0. Coefficients of
    // distinct modes multiply orthogonal shapes; their absolute sum bounds
    // the pointwise peak and is exact for a single mode.
    for (std::size_t k = 0; k < runs.front().states.size(); ++k) {
        double envelope = 0.0;
        for (const auto& run : runs) {
            if (k < run.states.size())
                envelope += std::abs(
                    actuator_port_voltage(run.states[k].psidot, cfg.synthesis.kappa0));
        }
        res.peak_voltage_V = std::max(res.peak_voltage_V, envelope * res.V0);
    }
    summary += "peak actuator voltage " + detail::format_value(res.peak_voltage_V) + " V (" +
               (res.peak_voltage_V < res.v_max_V ? "within" : "EXCEEDS") + " rated " +
               detail::format_value(res.v_max_V) + " V)\n";
    summary += "max energy drift " + detail::format_value(res.max_energy_drift) + "\n";

    if (runs.size() >= 2) {
        res.spillover = spillover_check(runs, systems);
        summary += "cross-mode energy leakage " + detail::format_value(res.spillover) + "\n";
    }

    res.summary_path = dir / "summary.txt";
    detail::write_text_file(res.summary_path, summary);
    return res;
}

// ---------------------------------------------------------------------------
// check: bandwidth, controllable modes, losslessness
// ---------------------------------------------------------------------------

struct CheckResult {
    double delta = 0.0;
    double beta_value = 0.0;
    double omega_max = 0.0;
    int highest_mode = 0;
    LosslessReport lossless;
    std::vector<std::string> warnings;
    std::string text;
    std::filesystem::path path;
};

inline CheckResult run_check(const ProjectConfig& cfg) {
    CheckResult res;
    res.delta = 1.0 / cfg.synthesis.n_modules;
    res.beta_value = beta(cfg.beam);
    res.omega_max = bandwidth_limit(res.delta, res.beta_value);

    int m = 1;
    while (modal_frequency(m + 1, res.beta_value) <= res.omega_max) ++m;
    if (modal_frequency(1, res.beta_value) > res.omega_max) m = 0;
    res.highest_mode = m;

    res.lossless = lossless_check(cfg.actuator);

    for (int mode : cfg.simulation.modes) {
        if (modal_frequency(mode, res.beta_value) > res.omega_max)
            res.warnings.push_back("requested mode " + detail::format_int(mode) +
                                   " lies above the module bandwidth at n=" +
                                   detail::format_int(cfg.synthesis.n_modules));
    }

    std::string text;
    text += "beta = " + detail::format_value(res.beta_value) + "\n";
    text += "n_modules = " + detail::format_int(cfg.synthesis.n_modules) +
            " (delta = " + detail::format_value(res.delta) + ")\n";
    text += "bandwidth omega_max = " + detail::format_value(res.omega_max) +
            " (dimensionless angular frequency)\n";
    text += "highest controllable mode: " + detail::format_int(res.highest_mode) + "\n";
    text += res.lossless.to_string() + "\n";
    for (const auto& w : res.warnings) text += "warning: " + w + "\n";
    res.text = text;

    const std::filesystem::path dir(cfg.output_directory);
    std::filesystem::create_directories(dir);
    res.path = dir / "check.txt";
    detail::write_text_file(res.path, text);
    return res;
}

}  // namespace pemb
