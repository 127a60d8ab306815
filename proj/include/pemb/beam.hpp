#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "pemb/errors.hpp"

namespace pemb {

// Physical description of a uniform slender beam together with the
// characteristic time used for non-dimensionalization. All quantities SI.
struct BeamSpec {
    double lambda = 0.0;     // mass per unit length (kg/m)
    double l = 0.0;          // length (m)
    double k_M = 0.0;        // bending stiffness E*I (N*m^2)
    double t0 = 1.0;         // characteristic time (s), free design choice
    double width = 0.0;      // cross-section width (m), optional
    double thickness = 0.0;  // cross-section thickness (m), optional
    double r0 = 0.0;         // radius of gyration sqrt(I/A) (m)

    void validate() const {
        if (!(lambda > 0.0)) throw domain_error("BeamSpec: lambda must be > 0");
        if (!(l > 0.0)) throw domain_error("BeamSpec: l must be > 0");
        if (!(k_M > 0.0)) throw domain_error("BeamSpec: k_M must be > 0");
        if (!(t0 > 0.0)) throw domain_error("BeamSpec: t0 must be > 0");
        if (!(r0 > 0.0)) throw domain_error("BeamSpec: r0 must be > 0");
    }

    // Builds the spec of a homogeneous rectangular-section beam from geometry
    // and material constants: lambda = density*A, k_M = E*I, r0 = sqrt(I/A).
    static BeamSpec rectangular(double length, double width, double thickness,
                                double youngs_modulus, double density,
                                double t0 = 1.0) {
        if (!(length > 0.0 && width > 0.0 && thickness > 0.0))
            throw domain_error("BeamSpec::rectangular: geometry must be > 0");
        if (!(youngs_modulus > 0.0 && density > 0.0))
            throw domain_error("BeamSpec::rectangular: material constants must be > 0");
        const double area = width * thickness;
        const double inertia = width * thickness * thickness * thickness / 12.0;
        BeamSpec spec;
        spec.lambda = density * area;
        spec.l = length;
        spec.k_M = youngs_modulus * inertia;
        spec.t0 = t0;
        spec.width = width;
        spec.thickness = thickness;
        spec.r0 = std::sqrt(inertia / area);  // = thickness/sqrt(12)
        return spec;
    }
};

// Dimensionless frequency parameter of the beam: beta^2 = lambda*l^4/(t0^2*k_M).
inline double beta(const BeamSpec& spec) {
    spec.validate();
    return std::sqrt(spec.lambda * spec.l * spec.l * spec.l * spec.l /
                     (spec.t0 * spec.t0 * spec.k_M));
}

// Dimensionless angular eigenfrequency of mode m of the simply supported
// beam: omega_m = (m*pi)^2 / beta.
inline double modal_frequency(int m, double beta_value) {
    if (m < 1) throw domain_error("modal_frequency: mode index must be >= 1");
    if (!(beta_value > 0.0)) throw domain_error("modal_frequency: beta must be > 0");
    const double mpi = static_cast<double>(m) * std::numbers::pi;
    return mpi * mpi / beta_value;
}

// Scaling maps between physical and dimensionless quantities. Abscissae scale
// with the beam length, time with t0, transverse deflection with the radius
// of gyration (the scale that also normalizes the electrical coupling), and
// the section actions with the matching stiffness-based scales.
struct Scaling {
    double l;    // m
    double t0;   // s
    double r0;   // m
    double k_M;  // N*m^2

    explicit Scaling(const BeamSpec& spec)
        : l(spec.l), t0(spec.t0), r0(spec.r0), k_M(spec.k_M) {
        spec.validate();
    }

    double to_abscissa(double x) const { return x / l; }
    double from_abscissa(double eps) const { return eps * l; }
    double to_time(double t) const { return t / t0; }
    double from_time(double tau) const { return tau * t0; }
    double to_deflection(double w) const { return w / r0; }
    double from_deflection(double zeta) const { return zeta * r0; }
    // Shear scale k_M*r0/l^3 and moment scale k_M*r0/l^2 follow from writing
    // the beam balance laws in the scaled variables.
    double to_shear(double T) const { return T * (l * l * l) / (k_M * r0); }
    double from_shear(double F_T) const { return F_T * k_M * r0 / (l * l * l); }
    double to_moment(double M) const { return M * (l * l) / (k_M * r0); }
    double from_moment(double F_M) const { return F_M * k_M * r0 / (l * l); }
};

}  // namespace pemb
