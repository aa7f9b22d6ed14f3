#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "stringmass/certificate.hpp"
#include "stringmass/config.hpp"
#include "stringmass/diagnostics.hpp"
#include "stringmass/integrate.hpp"
#include "stringmass/io.hpp"
#include "stringmass/spectral.hpp"

namespace stringmass {

inline SecondOrderSystem build_system(const RunConfig& cfg) {
    const Grid grid = build_grid(cfg.params, cfg.N1, cfg.N2);
    return assemble(cfg.params, cfg.gains, grid);
}

/// Weights used for the L/V columns: the certificate's (eps1, eps2) when the
/// gains admit one, else the Lemma-2-admissible fallback 1/(4C).
inline std::pair<double, double> report_epsilons(const PhysicalParams& p, const Gains& g) {
    const Certificate cert = certificate_constants(p, g);
    if (cert.feasible) return {cert.eps1, cert.eps2};
    const double C = std::max(std::sqrt(p.rho1 / p.alpha1), std::sqrt(p.rho2 / p.alpha2));
    return {1.0 / (4.0 * C), 1.0 / (4.0 * C)};
}

inline std::vector<EnergyReport> energy_table(const SecondOrderSystem& sys, const EnergyForm& ef,
                                              const Trajectory& traj, double eps1, double eps2) {
    std::vector<EnergyReport> rows;
    rows.reserve(traj.times.size());
    const double E0 = discrete_energy(sys, ef, traj.states.front());
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const StateVector& psi = traj.states[k];
        EnergyReport r;
        r.t = traj.times[k];
        r.E = discrete_energy(sys, ef, psi);
        r.E_norm = (E0 > 0.0) ? r.E / E0 : 0.0;
        const auto lyap = lyapunov_functionals(sys, ef, psi, r.t, eps1, eps2);
        r.L = lyap.L;
        r.V = lyap.V;
        r.I1 = lyap.I1;
        r.I2 = lyap.I2;
        r.P1 = lyap.P1;
        r.P2 = lyap.P2;
        r.eta = discrete_eta(sys, psi);
        r.diss_rhs = dissipation_rhs(sys, psi);
        rows.push_back(r);
    }
    return rows;
}

/// Everything one experiment produces.
struct RunResult {
    Spectrum spectrum;
    SpectralMetrics metrics;
    std::vector<EnergyReport> energy;
    std::optional<DecayFit> fit;
    double E_norm_final = 0.0;
};

/// Runs spectrum + simulation + diagnostics for one configuration and writes
/// spectrum.csv, energy.csv, meta.json (and snapshots.csv when enabled) into
/// `dir`.
inline RunResult run_experiment(const RunConfig& cfg, const std::filesystem::path& dir) {
    const SecondOrderSystem sys = build_system(cfg);
    const EnergyForm ef = build_energy_form(sys);

    RunResult res;
    res.spectrum = eigenvalues(sys);
    res.metrics = spectral_metrics(res.spectrum);
    write_spectrum_csv(dir / "spectrum.csv", res.spectrum);

    const InitialCondition ic = parse_ic(cfg.ic);
    const Trajectory traj = simulate(sys, ic, cfg.dt, cfg.t_final, cfg.record_every);
    const auto [e1, e2] = report_epsilons(cfg.params, cfg.gains);
    res.energy = energy_table(sys, ef, traj, e1, e2);
    write_energy_csv(dir / "energy.csv", res.energy);
    if (cfg.snapshots) write_snapshots_csv(dir / "snapshots.csv", sys, traj);
    if (!cfg.dump_matrices_dir.empty()) dump_matrices(cfg.dump_matrices_dir, sys);
    write_meta_json(dir / "meta.json", cfg);

    res.E_norm_final = res.energy.empty() ? 0.0 : res.energy.back().E_norm;
    bool positive = true;
    for (const auto& r : res.energy)
        if (!(r.E > 0.0)) positive = false;
    if (positive && res.energy.size() >= 10) {
        std::vector<double> ts, Es;
        for (const auto& r : res.energy) {
            ts.push_back(r.t);
            Es.push_back(r.E);
        }
        res.fit = fit_decay(ts, Es);
    }
    return res;
}

} // namespace stringmass
