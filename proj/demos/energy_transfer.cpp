// Integrate the first mode of the coupled beam/circuit pair with the coupling
// tuned to rho = beta/16 and watch the mechanical energy migrate completely
// into the electrical half in eight modal periods.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "pemb/pemb.hpp"

int main() {
    const pemb::BeamSpec beam =
        pemb::BeamSpec::rectangular(1.0, 0.03, 0.002, 69.0e9, 2700.0);
    const double b = pemb::beta(beam);
    const double rho = b / 16.0;
    const pemb::ModeSystem sys = pemb::mode_ode(1, b, rho);

    // Unit modal potential energy, beam at rest, electronics discharged.
    pemb::ModalState init;
    init.m = 1;
    init.u = std::sqrt(2.0) / (std::numbers::pi * std::numbers::pi);

    const double period = 2.0 * std::numbers::pi / sys.omega0();
    const double dt = 2.0 * std::numbers::pi / sys.split_high() / 80.0;
    const pemb::Trajectory run = pemb::integrate(sys, init, 1.1 * sys.transfer_time(), dt);

    std::printf("beta=%.6f rho=beta/16=%.6f\n", b, rho);
    std::printf("modal period %.4f, predicted transfer at %.4f (= %.2f periods)\n", period,
                sys.transfer_time(), sys.transfer_time() / period);

    std::printf("\n  tau/period   E_mech     E_elec\n");
    const std::size_t stride = run.states.size() / 16;
    for (std::size_t i = 0; i < run.states.size(); i += stride) {
        const auto [em, ee] = pemb::energy_partition(run.states[i], sys);
        std::printf("  %8.3f   %.6f   %.6f\n", run.tau[i] / period, em, ee);
    }

    double e_min = 1e300;
    double t_min = 0.0;
    for (std::size_t i = 0; i < run.states.size(); ++i) {
        const double em = pemb::energy_partition(run.states[i], sys).first;
        if (em < e_min) {
            e_min = em;
            t_min = run.tau[i];
        }
    }
    std::printf("\nfirst E_mech minimum: tau=%.4f (%.4f periods), residual %.2e\n", t_min,
                t_min / period, e_min);
    std::printf("energy drift over run: %.2e\n", run.max_energy_drift);
    return 0;
}
