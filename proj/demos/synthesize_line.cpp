// Synthesize the 10-module electrical analog of a 1 m aluminum beam, print
// the component values and the feasibility verdict, and compare the first
// eigenfrequencies of the assembled LC line against the beam's modal law.

#include <cstdio>
#include <numbers>

#include "pemb/pemb.hpp"

int main() {
    const pemb::BeamSpec beam =
        pemb::BeamSpec::rectangular(1.0, 0.03, 0.002, 69.0e9, 2700.0);
    const double b = pemb::beta(beam);
    std::printf("aluminum beam: lambda=%.4g kg/m, k_M=%.4g N*m^2, beta=%.6f\n",
                beam.lambda, beam.k_M, b);

    const int n = 10;
    const double delta = 1.0 / n;
    const double kappa0 = std::sqrt(2.0) / 10.0;
    const double kappainf = 10.0 * std::sqrt(2.0);
    const pemb::CircuitModule module =
        pemb::component_values(delta, beam, kappa0, kappainf, 100e-9);

    std::printf("\nper-module components (n=%d, delta=%.2f):\n", n, delta);
    std::printf("  C1=%.4e F  C2=%.4e F\n", module.C1, module.C2);
    std::printf("  L1=%.4e H  L2=%.4e H  L3=%.4e H  L4=%.4e H\n",
                module.L1, module.L2, module.L3, module.L4);

    const pemb::FeasibilityReport report = pemb::feasibility_check(module);
    std::printf("\n%s\n", report.to_string().c_str());

    const pemb::Netlist line = pemb::assemble_line(
        n, module, {pemb::Boundary::SimplySupported, pemb::Boundary::SimplySupported});
    const double w1 = pemb::modal_frequency(1, b) / beam.t0;
    const auto freqs = pemb::eigenfrequencies(line, w1, 3);

    std::printf("\nline spectrum vs beam modes:\n");
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        const int m = static_cast<int>(i) + 1;
        const double target = pemb::modal_frequency(m, b) / beam.t0;
        std::printf("  m=%d: line %.4f rad/s, beam %.4f rad/s (%.2f%% off)\n", m, freqs[i],
                    target, 100.0 * std::abs(freqs[i] - target) / target);
    }
    return 0;
}
