#pragma once

#include <Eigen/Dense>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stringmass/config.hpp"
#include "stringmass/diagnostics.hpp"
#include "stringmass/integrate.hpp"
#include "stringmass/spectral.hpp"

namespace stringmass {

/// Formats a double with 17 significant digits (round-trip exact).
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    return out;
}

inline void write_energy_csv(const std::filesystem::path& path,
                             const std::vector<EnergyReport>& rows) {
    auto out = open_out(path);
    out << "t,E,E_norm,L,V,I1,I2,P1,P2,eta,diss_rhs\n";
    for (const auto& r : rows) {
        out << fmt17(r.t) << ',' << fmt17(r.E) << ',' << fmt17(r.E_norm) << ',' << fmt17(r.L)
            << ',' << fmt17(r.V) << ',' << fmt17(r.I1) << ',' << fmt17(r.I2) << ','
            << fmt17(r.P1) << ',' << fmt17(r.P2) << ',' << fmt17(r.eta) << ','
            << fmt17(r.diss_rhs) << '\n';
    }
}

inline void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spec) {
    auto out = open_out(path);
    out << "re,im,residual\n";
    for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
        out << fmt17(spec.eigenvalues[k].real()) << ',' << fmt17(spec.eigenvalues[k].imag())
            << ',' << fmt17(spec.residuals[k]) << '\n';
    }
}

/// Snapshot rows: one per (recorded time, node), full field including the
/// left Dirichlet node.
inline void write_snapshots_csv(const std::filesystem::path& path, const SecondOrderSystem& sys,
                                const Trajectory& traj) {
    auto out = open_out(path);
    out << "t,x,w,w_t\n";
    const Grid& gr = sys.grid;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const StateVector& psi = traj.states[k];
        const std::string t = fmt17(traj.times[k]);
        out << t << ',' << fmt17(gr.x1[0]) << ",0,0\n";
        for (int j = 1; j <= gr.N1 + 1; ++j)
            out << t << ',' << fmt17(gr.x1[j]) << ',' << fmt17(psi.u[j - 1]) << ','
                << fmt17(psi.v[j - 1]) << '\n';
        for (int j = 1; j <= gr.N2 + 1; ++j)
            out << t << ',' << fmt17(gr.x2[j]) << ',' << fmt17(psi.u[sys.iz + j]) << ','
                << fmt17(psi.v[sys.iz + j]) << '\n';
    }
}

/// Coordinate text format: row col value, 17 significant digits.
inline void write_matrix_coord(const std::filesystem::path& path, const Eigen::MatrixXd& M) {
    auto out = open_out(path);
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            if (M(i, j) != 0.0) out << i << ' ' << j << ' ' << fmt17(M(i, j)) << '\n';
}

inline void dump_matrices(const std::filesystem::path& dir, const SecondOrderSystem& sys) {
    write_matrix_coord(dir / "Mfull.txt", sys.Mfull);
    write_matrix_coord(dir / "K.txt", sys.K);
    write_matrix_coord(dir / "Dmat.txt", sys.Dmat);
}

inline nlohmann::json config_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["rho1"] = cfg.params.rho1;
    j["rho2"] = cfg.params.rho2;
    j["alpha1"] = cfg.params.alpha1;
    j["alpha2"] = cfg.params.alpha2;
    j["m"] = cfg.params.m;
    j["l0"] = cfg.params.l0;
    j["l1"] = cfg.params.l1;
    j["l2"] = cfg.params.l2;
    j["b0"] = cfg.gains.b0;
    j["b1"] = cfg.gains.b1;
    j["d1"] = cfg.gains.d1;
    j["n1"] = cfg.N1;
    j["n2"] = cfg.N2;
    j["dt"] = cfg.dt;
    j["t_final"] = cfg.t_final;
    j["record_every"] = cfg.record_every;
    j["ic"] = cfg.ic;
    j["preset"] = cfg.preset;
    j["out"] = cfg.out_dir;
    j["seed"] = cfg.seed;
    j["snapshots"] = cfg.snapshots;
    j["dump_matrices"] = cfg.dump_matrices_dir;
    return j;
}

inline void write_meta_json(const std::filesystem::path& path, const RunConfig& cfg) {
    auto out = open_out(path);
    out << config_json(cfg).dump(2) << '\n';
}

} // namespace stringmass
