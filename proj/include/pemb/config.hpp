#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "pemb/beam.hpp"
#include "pemb/errors.hpp"
#include "pemb/netlist.hpp"
#include "pemb/piezo.hpp"

namespace pemb {

// One initial-deflection specification. Lengths are in meters; they are
// divided by the beam's radius of gyration when the profile is projected, so
// the modal coefficients come out dimensionless.
struct ProfileConfig {
    std::string type;                                  // sine | triangular | modal | modal_energy
    std::vector<std::pair<int, double>> sine_terms;    // (mode, amplitude_m)
    double height_m = 0.0;                             // triangular
    double apex = 0.5;                                 // triangular
    std::vector<std::pair<int, double>> modal_u;       // (mode, dimensionless u)
    std::vector<int> energy_modes;                     // modal_energy: unit potential energy each
};

struct SynthesisConfig {
    int n_modules = 0;
    double C1_F = 0.0;
    double kappa0 = 0.0;
    double kappainf = 0.0;
    Boundary boundary = Boundary::SimplySupported;
};

struct SimulationConfig {
    std::vector<int> modes;
    ProfileConfig profile;
    std::optional<double> t_end;          // dimensionless tau
    std::optional<double> dt;             // dimensionless tau
    std::optional<double> rho_override;   // replaces the actuator-derived rho
};

struct ProjectConfig {
    BeamSpec beam;
    ActuatorSpec actuator;
    SynthesisConfig synthesis;
    SimulationConfig simulation;
    std::string output_directory = "out";
};

namespace detail {

inline std::string join_path(const std::string& path, const std::string& key) {
    return path == "<root>" ? key : path + "." + key;
}

inline const nlohmann::json& require_member(const nlohmann::json& j, const std::string& path,
                                            const std::string& key) {
    const auto it = j.find(key);
    if (it == j.end()) throw config_error(join_path(path, key), "missing required field");
    return *it;
}

inline double require_number(const nlohmann::json& j, const std::string& path,
                             const std::string& key) {
    const auto& v = require_member(j, path, key);
    if (!v.is_number()) throw config_error(join_path(path, key), "expected a number");
    return v.get<double>();
}

inline double optional_number(const nlohmann::json& j, const std::string& path,
                              const std::string& key, double fallback) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return fallback;
    if (!it->is_number()) throw config_error(join_path(path, key), "expected a number");
    return it->get<double>();
}

inline const nlohmann::json& require_object(const nlohmann::json& j, const std::string& path,
                                            const std::string& key) {
    const auto& v = require_member(j, path, key);
    if (!v.is_object()) throw config_error(join_path(path, key), "expected an object");
    return v;
}

inline Boundary parse_boundary(const nlohmann::json& j, const std::string& path) {
    if (!j.is_string()) throw config_error(path, "expected a string");
    const std::string s = j.get<std::string>();
    if (s == "simply_supported") return Boundary::SimplySupported;
    if (s == "free") return Boundary::Free;
    if (s == "clamped") return Boundary::Clamped;
    throw config_error(path, "unknown boundary '" + s +
                                 "' (expected simply_supported, free, or clamped)");
}

inline ProfileConfig parse_profile(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) throw config_error(path, "expected an object");
    ProfileConfig p;
    const auto& type = require_member(j, path, "type");
    if (!type.is_string()) throw config_error(path + ".type", "expected a string");
    p.type = type.get<std::string>();

    if (p.type == "sine") {
        const auto& terms = require_member(j, path, "terms");
        if (!terms.is_array() || terms.empty())
            throw config_error(path + ".terms", "expected a non-empty array");
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::string tpath = path + ".terms[" + std::to_string(i) + "]";
            if (!terms[i].is_object()) throw config_error(tpath, "expected an object");
            const double m = require_number(terms[i], tpath, "mode");
            if (m < 1 || m != static_cast<int>(m))
                throw config_error(tpath + ".mode", "expected a positive integer");
            p.sine_terms.emplace_back(static_cast<int>(m),
                                      require_number(terms[i], tpath, "amplitude_m"));
        }
    } else if (p.type == "triangular") {
        p.height_m = require_number(j, path, "height_m");
        p.apex = optional_number(j, path, "apex", 0.5);
        if (!(p.apex > 0.0) || !(p.apex < 1.0))
            throw config_error(path + ".apex", "must lie strictly inside (0,1)");
    } else if (p.type == "modal") {
        const auto& terms = require_member(j, path, "terms");
        if (!terms.is_array() || terms.empty())
            throw config_error(path + ".terms", "expected a non-empty array");
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::string tpath = path + ".terms[" + std::to_string(i) + "]";
            if (!terms[i].is_object()) throw config_error(tpath, "expected an object");
            const double m = require_number(terms[i], tpath, "mode");
            if (m < 1 || m != static_cast<int>(m))
                throw config_error(tpath + ".mode", "expected a positive integer");
            p.modal_u.emplace_back(static_cast<int>(m), require_number(terms[i], tpath, "u"));
        }
    } else if (p.type == "modal_energy") {
        const auto& modes = require_member(j, path, "modes");
        if (!modes.is_array() || modes.empty())
            throw config_error(path + ".modes", "expected a non-empty array");
        for (const auto& v : modes) {
            if (!v.is_number_integer() || v.get<int>() < 1)
                throw config_error(path + ".modes", "expected positive integers");
            p.energy_modes.push_back(v.get<int>());
        }
    } else {
        throw config_error(path + ".type",
                           "unknown profile type '" + p.type +
                               "' (expected sine, triangular, modal, or modal_energy)");
    }
    return p;
}

}  // namespace detail

// Parse and validate a full project configuration. Every failure names the
// dotted path of the offending field.
inline ProjectConfig parse_config(const nlohmann::json& root) {
    using detail::optional_number;
    using detail::require_member;
    using detail::require_number;
    using detail::require_object;

    if (!root.is_object()) throw config_error("<root>", "expected a JSON object");
    ProjectConfig cfg;

    const auto& jb = require_object(root, "<root>", "beam");
    {
        const std::string path = "beam";
        const double length = require_number(jb, path, "length_m");
        const double width = require_number(jb, path, "width_m");
        const double thickness = require_number(jb, path, "thickness_m");
        const double E = require_number(jb, path, "youngs_modulus_Pa");
        const double density = require_number(jb, path, "density_kg_m3");
        const double t0 = optional_number(jb, path, "characteristic_time_s", 1.0);
        try {
            cfg.beam = BeamSpec::rectangular(length, width, thickness, E, density, t0);
        } catch (const domain_error& e) {
            throw config_error(path, e.what());
        }
        cfg.beam.lambda = optional_number(jb, path, "mass_per_length_kg_m", cfg.beam.lambda);
        cfg.beam.k_M = optional_number(jb, path, "bending_stiffness_Nm2", cfg.beam.k_M);
        cfg.beam.r0 = optional_number(jb, path, "radius_of_gyration_m", cfg.beam.r0);
        try {
            cfg.beam.validate();
        } catch (const domain_error& e) {
            throw config_error(path, e.what());
        }
    }

    const auto& ja = require_object(root, "<root>", "actuator");
    {
        const std::string path = "actuator";
        cfg.actuator.K_mm = require_number(ja, path, "K_mm_Nm");
        cfg.actuator.K_me = require_number(ja, path, "K_me");
        cfg.actuator.K_em = require_number(ja, path, "K_em");
        cfg.actuator.K_ee = require_number(ja, path, "K_ee_F");
        cfg.actuator.l_p = require_number(ja, path, "length_m");
        cfg.actuator.V_max = require_number(ja, path, "V_max_V");
        const auto it = ja.find("neglect_layer_stiffness");
        if (it != ja.end()) {
            if (!it->is_boolean())
                throw config_error(path + ".neglect_layer_stiffness", "expected a boolean");
            cfg.actuator.neglect_layer_stiffness = it->get<bool>();
        }
        if (!(cfg.actuator.l_p > 0.0)) throw config_error(path + ".length_m", "must be > 0");
        if (!(cfg.actuator.V_max > 0.0)) throw config_error(path + ".V_max_V", "must be > 0");
    }

    const auto& js = require_object(root, "<root>", "synthesis");
    {
        const std::string path = "synthesis";
        const double n = require_number(js, path, "n_modules");
        if (n < 1 || n != static_cast<int>(n))
            throw config_error(path + ".n_modules", "expected a positive integer");
        cfg.synthesis.n_modules = static_cast<int>(n);
        cfg.synthesis.C1_F = require_number(js, path, "C1_F");
        if (!(cfg.synthesis.C1_F > 0.0)) throw config_error(path + ".C1_F", "must be > 0");
        cfg.synthesis.kappa0 = require_number(js, path, "kappa0");
        cfg.synthesis.kappainf = require_number(js, path, "kappainf");
        if (!(cfg.synthesis.kappa0 > 0.0)) throw config_error(path + ".kappa0", "must be > 0");
        if (!(cfg.synthesis.kappainf > 0.0))
            throw config_error(path + ".kappainf", "must be > 0");
        const auto it = js.find("boundary");
        if (it != js.end()) cfg.synthesis.boundary = detail::parse_boundary(*it, path + ".boundary");
    }

    const auto& jm = require_object(root, "<root>", "simulation");
    {
        const std::string path = "simulation";
        const auto& modes = require_member(jm, path, "modes");
        if (!modes.is_array() || modes.empty())
            throw config_error(path + ".modes", "expected a non-empty array");
        for (const auto& v : modes) {
            if (!v.is_number_integer() || v.get<int>() < 1)
                throw config_error(path + ".modes", "expected positive integers");
            cfg.simulation.modes.push_back(v.get<int>());
        }
        cfg.simulation.profile =
            detail::parse_profile(require_member(jm, path, "initial_profile"),
                                  path + ".initial_profile");
        if (const auto it = jm.find("t_end"); it != jm.end() && !it->is_null()) {
            if (!it->is_number() || !(it->get<double>() > 0.0))
                throw config_error(path + ".t_end", "expected a positive number");
            cfg.simulation.t_end = it->get<double>();
        }
        if (const auto it = jm.find("dt"); it != jm.end() && !it->is_null()) {
            if (!it->is_number() || !(it->get<double>() > 0.0))
                throw config_error(path + ".dt", "expected a positive number");
            cfg.simulation.dt = it->get<double>();
        }
        if (const auto it = jm.find("rho_override"); it != jm.end() && !it->is_null()) {
            if (!it->is_number() || !(it->get<double>() >= 0.0))
                throw config_error(path + ".rho_override", "expected a number >= 0");
            cfg.simulation.rho_override = it->get<double>();
        }
    }

    if (const auto it = root.find("output"); it != root.end()) {
        if (!it->is_object()) throw config_error("output", "expected an object");
        if (const auto dir = it->find("directory"); dir != it->end()) {
            if (!dir->is_string()) throw config_error("output.directory", "expected a string");
            cfg.output_directory = dir->get<std::string>();
        }
    }
    return cfg;
}

inline ProjectConfig parse_config_text(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error("<root>", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(root);
}

}  // namespace pemb
