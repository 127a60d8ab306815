#pragma once

#include <stdexcept>
#include <string>

namespace pemb {

// Invalid argument or precondition violation (non-positive sizes, bad mode
// index, unsupported option). Maps to CLI exit code 1.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// Evaluation requested on top of a resonance of the element. Carries the
// offending denominator root and the corresponding dimensionless angular
// frequency so callers can report or sidestep it. Maps to CLI exit code 2.
class singularity_error : public std::runtime_error {
public:
    singularity_error(const std::string& what, double root, double omega_pole)
        : std::runtime_error(what), root_(root), omega_pole_(omega_pole) {}
    // Root x of cosh(x)cos(x) = 1 closest to the requested evaluation point.
    double root() const noexcept { return root_; }
    // Pole position on the dimensionless frequency axis, omega = x^2/(beta delta^2).
    double omega_pole() const noexcept { return omega_pole_; }

private:
    double root_;
    double omega_pole_;
};

// Step size too coarse for the fastest oscillation in the system. Carries the
// largest admissible step so the caller can retry.
class timestep_error : public domain_error {
public:
    timestep_error(const std::string& what, double required_dt)
        : domain_error(what), required_dt_(required_dt) {}
    double required_dt() const noexcept { return required_dt_; }

private:
    double required_dt_;
};

// Configuration file problem. Carries the dotted path of the offending field.
class config_error : public std::runtime_error {
public:
    config_error(const std::string& field_path, const std::string& what)
        : std::runtime_error("config error at " + field_path + ": " + what),
          field_path_(field_path) {}
    const std::string& field_path() const noexcept { return field_path_; }

private:
    std::string field_path_;
};

// Requested feature is specified but intentionally not implemented.
class unimplemented_error : public std::logic_error {
public:
    explicit unimplemented_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace pemb
