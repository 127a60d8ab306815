#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "pemb/errors.hpp"

namespace pemb {

using Complex = std::complex<double>;

// Dimensionless Laplace point eta together with the derived wavenumber
// k = sqrt(eta) * exp(j*pi/4) (principal square root), so that |k|^2 = |eta|.
inline Complex wavenumber(Complex eta) {
    const double c = std::numbers::sqrt2 / 2.0;
    return std::sqrt(eta) * Complex(c, c);
}

struct LaplacePoint {
    Complex eta;
    Complex k;

    static LaplacePoint from_eta(Complex eta) { return {eta, wavenumber(eta)}; }
};

namespace detail {

// Factorial table covering every term used by the series below.
inline double factorial(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(64);
        t[0] = 1.0;
        for (int i = 1; i < 64; ++i) t[i] = t[i - 1] * static_cast<double>(i);
        return t;
    }();
    return table[static_cast<std::size_t>(n)];
}

}  // namespace detail

// Even/odd splits of cosh and cos, the natural basis for clamped-type beam
// boundary problems:
//   S = (cosh+cos)/2, T = (sinh+sin)/2, U = (cosh-cos)/2, V = (sinh-sin)/2
// with the derivative cycle S' = V, V' = U, U' = T, T' = S. For small
// arguments the differences U and V lose all significance in the direct
// formulas, so a truncated power series is used there instead.
struct KrylovBasis {
    Complex S, T, U, V;
};

inline KrylovBasis krylov_functions(Complex z) {
    if (std::abs(z) < 2.0) {
        KrylovBasis b{0.0, 0.0, 0.0, 0.0};
        const Complex z4 = z * z * z * z;
        Complex p = 1.0;  // z^{4k}
        for (int k = 0; k < 12; ++k, p *= z4) {
            b.S += p / detail::factorial(4 * k);
            b.T += p * z / detail::factorial(4 * k + 1);
            b.U += p * z * z / detail::factorial(4 * k + 2);
            b.V += p * z * z * z / detail::factorial(4 * k + 3);
        }
        return b;
    }
    const Complex ch = std::cosh(z), sh = std::sinh(z);
    const Complex c = std::cos(z), s = std::sin(z);
    return {(ch + c) / 2.0, (sh + s) / 2.0, (ch - c) / 2.0, (sh - s) / 2.0};
}

// Stable evaluation of 1 - cosh(z)cos(z), the common denominator of the
// element mobility entries (equivalently 2*(U^2 - V*T)). Near z = 0 the
// direct form cancels to roundoff; the series 1 - cosh(z)cos(z) =
// -sum_{m>=1} (-4)^m z^{4m}/(4m)! starts at z^4/6 and is exact there.
inline Complex one_minus_cosh_cos(Complex z) {
    if (std::abs(z) < 2.0) {
        Complex acc = 0.0;
        const Complex z4 = z * z * z * z;
        Complex p = z4;     // z^{4m}
        double sign = 4.0;  // -(-4)^m
        for (int m = 1; m <= 13; ++m, p *= z4, sign *= -4.0) {
            acc += sign * p / detail::factorial(4 * m);
        }
        return acc;
    }
    return 1.0 - std::cosh(z) * std::cos(z);
}

// First `count` positive roots x of cosh(x)cos(x) = 1, the resonances of the
// free-free element. Newton iteration from the asymptotic guesses (k+1/2)*pi.
inline std::vector<double> pole_roots(int count) {
    std::vector<double> roots;
    roots.reserve(static_cast<std::size_t>(count));
    for (int k = 1; roots.size() < static_cast<std::size_t>(count); ++k) {
        double x = (static_cast<double>(k) + 0.5) * std::numbers::pi;
        for (int it = 0; it < 60; ++it) {
            const double f = 1.0 - std::cosh(x) * std::cos(x);
            const double fp = -std::sinh(x) * std::cos(x) + std::cosh(x) * std::sin(x);
            const double step = f / fp;
            x -= step;
            if (std::abs(step) < 1e-15 * x) break;
        }
        roots.push_back(x);
    }
    return roots;
}

// Constant quoted for the bandwidth-size product; deliberately the rounded
// engineering value, not the full-precision root of cosh(x)cos(x) = 1.
inline constexpr double kBandwidthRoot = 4.73004;

// Largest dimensionless angular frequency at which a lumped module of size
// delta still tracks the continuous element: omega_max = 4.73004^2/(delta^2*beta).
inline double bandwidth_limit(double delta, double beta_value) {
    if (!(delta > 0.0)) throw domain_error("bandwidth_limit: delta must be > 0");
    if (!(beta_value > 0.0)) throw domain_error("bandwidth_limit: beta must be > 0");
    return kBandwidthRoot * kBandwidthRoot / (delta * delta * beta_value);
}

// 4x4 mobility of a free-free beam element of dimensionless size delta,
// evaluated at the Laplace point eta. Row/column order is
// (v1, omega1, v2, omega2) against (F_T1, F_M1, F_T2, F_M2), terminal 1 at
// the left end, terminal 2 at the right end.
struct MobilityMatrix {
    double delta;
    LaplacePoint at;
    Eigen::Matrix4cd entries;
};

// Solves the element boundary-value problem zeta'''' = -eta^2 * beta^2 * zeta
// (written with the spatial wavenumber a = sqrt(beta)*k, a^4 = -beta^2*eta^2)
// once per unit through-vector and reads the terminal velocities eta*(zeta,
// zeta') at both ends. Through variables are the actions exerted on the
// element at its terminals, with signs chosen per the outward normal of each
// cut: the unit basis enters as
//   F_T1 = zeta'''(0), F_M1 = -zeta''(0), F_T2 = -zeta'''(delta), F_M2 = zeta''(delta).
// The general solution is written in the Krylov basis
//   zeta(eps) = c1*S(a*eps) + c2*T(a*eps) + c3*U(a*eps) + c4*V(a*eps)
// (an equivalent reshuffling of the cos/sin/cosh/sinh basis) because there
// the left-end conditions give c3, c4 directly and the remaining 2x2 system
// for c1, c2 has determinant (1 - cosh(x)cos(x))/2, which the series above
// evaluates without cancellation; the direct four-function basis is
// catastrophically ill-conditioned in the rigid-body limit.
inline MobilityMatrix exact_mobility(double delta, Complex eta, double beta_value) {
    if (!(delta > 0.0) || delta > 1.0)
        throw domain_error("exact_mobility: delta must lie in (0, 1]");
    if (!(beta_value > 0.0)) throw domain_error("exact_mobility: beta must be > 0");

    const Complex a = std::sqrt(beta_value) * wavenumber(eta);
    const Complex x = a * delta;
    const Complex den = one_minus_cosh_cos(x);

    if (eta == 0.0) {
        throw singularity_error(
            "exact_mobility: eta = 0 sits on the rigid-body pole of the element",
            0.0, 0.0);
    }
    // Pole guard: the nonzero denominator roots sit at |x| >= 4.73; below
    // |x| = 1 a small denominator is just the benign x^4/6 behaviour that the
    // series path already handles to full precision.
    if (std::abs(den) < 1e-9 && std::abs(x) > 1.0) {
        const auto roots = pole_roots(8);
        double nearest = roots.front();
        for (double r : roots) {
            if (std::abs(std::abs(x) - r) < std::abs(std::abs(x) - nearest)) nearest = r;
        }
        const double omega_pole = nearest * nearest / (beta_value * delta * delta);
        std::ostringstream msg;
        msg << "exact_mobility: eta = (" << eta.real() << ", " << eta.imag()
            << ") is within tolerance of the element resonance at |omega| = "
            << omega_pole << " (denominator root x = " << nearest << ")";
        throw singularity_error(msg.str(), nearest, omega_pole);
    }

    const KrylovBasis kb = krylov_functions(x);
    const Complex d2 = den / 2.0;  // det of the 2x2 system below
    const Complex a2 = a * a, a3 = a * a * a;

    MobilityMatrix result{delta, LaplacePoint::from_eta(eta), Eigen::Matrix4cd()};
    for (int j = 0; j < 4; ++j) {
        const double t1 = (j == 0) ? 1.0 : 0.0;
        const double m1 = (j == 1) ? 1.0 : 0.0;
        const double t2 = (j == 2) ? 1.0 : 0.0;
        const double m2 = (j == 3) ? 1.0 : 0.0;

        // Left-end conditions: zeta''(0) = a^2*c3 = -m1, zeta'''(0) = a^3*c4 = t1.
        const Complex c3 = -m1 / a2;
        const Complex c4 = t1 / a3;
        // Right-end conditions reduce to [U V; T U] * (c1, c2) = (R1, R2).
        const Complex R1 = m2 / a2 - c3 * kb.S - c4 * kb.T;
        const Complex R2 = -t2 / a3 - c3 * kb.V - c4 * kb.S;
        const Complex c1 = (kb.U * R1 - kb.V * R2) / d2;
        const Complex c2 = (kb.U * R2 - kb.T * R1) / d2;

        const Complex z0 = c1;
        const Complex zp0 = a * c2;
        const Complex zd = c1 * kb.S + c2 * kb.T + c3 * kb.U + c4 * kb.V;
        const Complex zpd = a * (c1 * kb.V + c2 * kb.S + c3 * kb.T + c4 * kb.U);

        result.entries(0, j) = eta * z0;
        result.entries(1, j) = eta * zp0;
        result.entries(2, j) = eta * zd;
        result.entries(3, j) = eta * zpd;
    }
    return result;
}

// Two-pole truncation of the element mobility, M(eta) ~ K0/eta + Kinf*eta.
// K0 is the residue of the pole at zero (the rigid-body inverse inertia of
// the element); Kinf is the coefficient of eta (the elastic flexibility with
// the rigid modes removed), a polynomial in delta truncated at
// truncation_order.
struct FosterForm {
    Eigen::Matrix4d K0;
    Eigen::Matrix4d Kinf;
    double delta;
    int truncation_order;
};

// truncation_order selects the delta-degree kept in Kinf. Order 3 keeps the
// full closed-form polynomial (the residue is exact there), preserves
// symmetry, positive semidefiniteness and rank 4, and is the form the network
// synthesis component values are calibrated against; orders 1 and 2 are
// reduced-order studies that drop the delta^3 (and delta^2) entries and give
// up passivity of the truncated representation.
inline FosterForm foster_residues(double delta, double beta_value, int truncation_order = 3) {
    if (!(delta > 0.0) || delta > 1.0)
        throw domain_error("foster_residues: delta must lie in (0, 1]");
    if (!(beta_value > 0.0)) throw domain_error("foster_residues: beta must be > 0");
    if (truncation_order < 1 || truncation_order > 3)
        throw domain_error("foster_residues: truncation_order must be 1, 2 or 3");

    FosterForm f;
    f.delta = delta;
    f.truncation_order = truncation_order;

    // Residue at zero: terminal-mapped inverse inertia of the rigid element
    // (mass beta^2*delta, centroidal inertia beta^2*delta^3/12). G maps
    // centroid velocity/spin to terminal velocities; the residue is exact in
    // delta, no truncation applies.
    Eigen::Matrix<double, 4, 2> G;
    G << 1.0, -delta / 2.0,
         0.0, 1.0,
         1.0, delta / 2.0,
         0.0, 1.0;
    const double b2 = beta_value * beta_value;
    Eigen::Matrix2d inv_inertia = Eigen::Matrix2d::Zero();
    inv_inertia(0, 0) = 1.0 / (b2 * delta);
    inv_inertia(1, 1) = 12.0 / (b2 * delta * delta * delta);
    f.K0 = G * inv_inertia * G.transpose();

    // Coefficient of eta: closed-form polynomial in delta, exact at order 3.
    // Entries of lower delta-degree than the truncation order are kept as is;
    // higher-degree entries are zeroed.
    const double d = delta, d2 = d * d, d3 = d * d * d;
    const double keep2 = (truncation_order >= 2) ? 1.0 : 0.0;
    const double keep3 = (truncation_order >= 3) ? 1.0 : 0.0;
    Eigen::Matrix4d Ki;
    Ki << keep3 * d3 / 105.0, keep2 * -11.0 * d2 / 210.0, keep3 * d3 / 140.0, keep2 * 13.0 * d2 / 420.0,
          keep2 * -11.0 * d2 / 210.0, 13.0 * d / 35.0, keep2 * -13.0 * d2 / 420.0, -9.0 * d / 70.0,
          keep3 * d3 / 140.0, keep2 * -13.0 * d2 / 420.0, keep3 * d3 / 105.0, keep2 * 11.0 * d2 / 210.0,
          keep2 * 13.0 * d2 / 420.0, -9.0 * d / 70.0, keep2 * 11.0 * d2 / 210.0, 13.0 * d / 35.0;
    f.Kinf = Ki;
    return f;
}

// Evaluates the truncated form at a Laplace point.
inline Eigen::Matrix4cd foster_eval(const FosterForm& f, Complex eta) {
    if (eta == 0.0) throw domain_error("foster_eval: eta must be nonzero");
    return f.K0.cast<Complex>() / eta + f.Kinf.cast<Complex>() * eta;
}

}  // namespace pemb
