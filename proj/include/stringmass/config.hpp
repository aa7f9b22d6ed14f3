#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "stringmass/model.hpp"

namespace stringmass {

/// Fully resolved run configuration.
struct RunConfig {
    PhysicalParams params = PhysicalParams::reference();
    Gains gains;
    int N1 = 30;
    int N2 = 30;
    double dt = 1e-3;
    double t_final = 20.0;
    int record_every = 10;
    std::string ic = "paper"; ///< zero | paper | sine | box | file:PATH
    std::string preset = "custom";
    std::string out_dir = "out";
    unsigned long seed = 42;
    std::string dump_matrices_dir; ///< empty = no dump
    bool snapshots = false;
};

/// Fig.-2 damping presets:
/// (a) b0=0, b1=d1=1; (b) d1=0, b0=b1=1; (c) b0=b1=d1=1; (d) b1=0, b0=d1=1.
inline Gains preset_gains(const std::string& tag) {
    if (tag == "a") return Gains{0.0, 1.0, 1.0};
    if (tag == "b") return Gains{1.0, 1.0, 0.0};
    if (tag == "c") return Gains{1.0, 1.0, 1.0};
    if (tag == "d") return Gains{1.0, 0.0, 1.0};
    throw std::invalid_argument("unknown preset '" + tag + "' (expected a, b, c or d)");
}

/// Loads physical/gain parameters from a JSON file with keys rho1, rho2,
/// alpha1, alpha2, m, l1, l2, b0, b1, d1 (all optional; l0 is fixed to 0).
inline void load_config_file(const std::string& path, PhysicalParams& p, Gains& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("config parse error in " + path + ": " + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("config must be a JSON object: " + path);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (!it.value().is_number())
            throw std::runtime_error("config key '" + k + "' must be a number");
        const double v = it.value().get<double>();
        if (k == "rho1") p.rho1 = v;
        else if (k == "rho2") p.rho2 = v;
        else if (k == "alpha1") p.alpha1 = v;
        else if (k == "alpha2") p.alpha2 = v;
        else if (k == "m") p.m = v;
        else if (k == "l1") p.l1 = v;
        else if (k == "l2") p.l2 = v;
        else if (k == "b0") g.b0 = v;
        else if (k == "b1") g.b1 = v;
        else if (k == "d1") g.d1 = v;
        else throw std::runtime_error("unknown config key '" + k + "'");
    }
    p.l0 = 0.0;
}

/// Parses the --ic choice into an InitialCondition (file:PATH loads custom
/// per-segment samples from JSON arrays w1, v1, w2, v2).
inline InitialCondition parse_ic(const std::string& choice) {
    if (choice == "zero") return zero_ic();
    if (choice == "paper") return paper_experiment_ic();
    if (choice == "sine") return sine_velocity_ic();
    if (choice == "box") return box_displacement_ic();
    if (choice.rfind("file:", 0) == 0) {
        const std::string path = choice.substr(5);
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open ic file: " + path);
        nlohmann::json j;
        in >> j;
        InitialCondition ic;
        ic.kind = InitialCondition::Kind::CustomSamples;
        ic.w1 = j.at("w1").get<std::vector<double>>();
        ic.v1 = j.at("v1").get<std::vector<double>>();
        ic.w2 = j.at("w2").get<std::vector<double>>();
        ic.v2 = j.at("v2").get<std::vector<double>>();
        return ic;
    }
    throw std::invalid_argument("unknown ic '" + choice + "'");
}

} // namespace stringmass
