// Command-line front end: certificate evaluation, spectra, simulations and
// the four-preset sweep, emitting CSV/JSON for plotting.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stringmass/run.hpp"

namespace fs = std::filesystem;
using namespace stringmass;

namespace {

struct CommonOpts {
    std::string config_file;
    std::string preset;
    std::string eps_override; // "eps1,eps2,delta" for certificate checking
};

void add_common(CLI::App* cmd, RunConfig& cfg, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_file, "JSON parameter file");
    cmd->add_option("--n1", cfg.N1, "interior resolution of segment 1");
    cmd->add_option("--n2", cfg.N2, "interior resolution of segment 2");
    cmd->add_option("--dt", cfg.dt, "time step");
    cmd->add_option("--t-final", cfg.t_final, "simulation horizon");
    cmd->add_option("--record-every", cfg.record_every, "recording stride");
    cmd->add_option("--ic", cfg.ic, "initial condition: zero|paper|sine|box|file:PATH");
    cmd->add_option("--preset", opts.preset, "damping preset a|b|c|d");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--seed", cfg.seed, "seed echoed into meta.json");
    cmd->add_option("--dump-matrices", cfg.dump_matrices_dir,
                    "write Mfull/K/Dmat in coordinate text format to DIR");
    cmd->add_flag("--snapshots", cfg.snapshots, "also write snapshots.csv");
}

void resolve(RunConfig& cfg, const CommonOpts& opts) {
    if (!opts.config_file.empty()) load_config_file(opts.config_file, cfg.params, cfg.gains);
    if (!opts.preset.empty()) {
        cfg.gains = preset_gains(opts.preset);
        cfg.preset = opts.preset;
    }
    auto rep = validate_params(cfg.params, cfg.gains);
    if (!rep.valid()) {
        std::ostringstream os;
        for (const auto& v : rep.violations) os << v << "; ";
        throw std::runtime_error("invalid parameters: " + os.str());
    }
}

nlohmann::json certificate_json(const Certificate& c) {
    nlohmann::json j;
    j["feasible"] = c.feasible;
    j["C"] = c.C;
    j["C1"] = c.C1;
    j["C2"] = c.C2;
    j["eps1_bound"] = c.eps1_bound;
    j["eps2_bound"] = c.eps2_bound;
    j["eps1"] = c.eps1;
    j["eps2"] = c.eps2;
    j["delta_lo"] = c.delta_lo;
    j["delta_hi"] = c.delta_hi;
    j["delta"] = c.delta;
    j["T1"] = c.T1;
    j["T2"] = c.T2;
    j["T3"] = c.T3;
    j["T4"] = c.T4;
    j["T"] = c.T;
    j["ratio"] = c.ratio;
    if (!c.reason.empty()) j["reason"] = c.reason;
    return j;
}

int cmd_certificate(RunConfig cfg, const CommonOpts& opts) {
    resolve(cfg, opts);
    const Certificate cert = certificate_constants(cfg.params, cfg.gains);
    nlohmann::json j = certificate_json(cert);
    if (!opts.eps_override.empty()) {
        double e1, e2, dl;
        if (std::sscanf(opts.eps_override.c_str(), "%lf,%lf,%lf", &e1, &e2, &dl) != 3)
            throw std::runtime_error("--check expects eps1,eps2,delta");
        const ConditionReport rep = check_conditions(cfg.params, cfg.gains, e1, e2, dl);
        nlohmann::json cj = nlohmann::json::array();
        for (const auto& c : rep.conditions)
            cj.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
        j["conditions"] = cj;
        j["conditions_pass"] = rep.all_pass();
    }
    std::cout << j.dump() << '\n';
    return cert.feasible ? 0 : 1;
}

int cmd_spectrum(RunConfig cfg, const CommonOpts& opts) {
    resolve(cfg, opts);
    const SecondOrderSystem sys = build_system(cfg);
    const Spectrum spec = eigenvalues(sys);
    const SpectralMetrics met = spectral_metrics(spec);
    write_spectrum_csv(fs::path(cfg.out_dir) / "spectrum.csv", spec);
    if (!cfg.dump_matrices_dir.empty()) dump_matrices(cfg.dump_matrices_dir, sys);
    write_meta_json(fs::path(cfg.out_dir) / "meta.json", cfg);
    std::cout << "spectrum: " << spec.eigenvalues.size() << " eigenvalues, abscissa "
              << met.abscissa << ", min gap " << met.min_gap << "\n";
    return 0;
}

int cmd_simulate(RunConfig cfg, const CommonOpts& opts) {
    resolve(cfg, opts);
    const SecondOrderSystem sys = build_system(cfg);
    const EnergyForm ef = build_energy_form(sys);
    const InitialCondition ic = parse_ic(cfg.ic);
    const Trajectory traj = simulate(sys, ic, cfg.dt, cfg.t_final, cfg.record_every);
    const auto [e1, e2] = report_epsilons(cfg.params, cfg.gains);
    const auto rows = energy_table(sys, ef, traj, e1, e2);
    write_energy_csv(fs::path(cfg.out_dir) / "energy.csv", rows);
    if (cfg.snapshots) write_snapshots_csv(fs::path(cfg.out_dir) / "snapshots.csv", sys, traj);
    if (!cfg.dump_matrices_dir.empty()) dump_matrices(cfg.dump_matrices_dir, sys);
    write_meta_json(fs::path(cfg.out_dir) / "meta.json", cfg);
    std::cout << "simulate: " << rows.size() << " samples, final E_norm "
              << (rows.empty() ? 0.0 : rows.back().E_norm) << "\n";
    return 0;
}

int cmd_sweep(RunConfig cfg, const CommonOpts& opts, const std::string& presets_arg) {
    resolve(cfg, opts);
    std::vector<std::string> tags;
    std::stringstream ss(presets_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) tags.push_back(tok);
    }
    if (tags.empty()) tags = {"a", "b", "c", "d"};

    nlohmann::json summary;
    for (const std::string& tag : tags) {
        RunConfig pc = cfg;
        pc.gains = preset_gains(tag); // throws on unknown tag
        pc.preset = tag;
        pc.out_dir = (fs::path(cfg.out_dir) / tag).string();
        if (!cfg.dump_matrices_dir.empty())
            pc.dump_matrices_dir = (fs::path(cfg.dump_matrices_dir) / tag).string();
        const RunResult res = run_experiment(pc, pc.out_dir);
        // flat per-preset spectrum copy next to summary.json
        write_spectrum_csv(fs::path(cfg.out_dir) / ("spectrum_" + tag + ".csv"), res.spectrum);
        nlohmann::json entry;
        entry["abscissa"] = res.metrics.abscissa;
        entry["min_gap"] = res.metrics.min_gap;
        entry["E_norm_final"] = res.E_norm_final;
        if (res.fit) {
            entry["sigma_hat"] = res.fit->sigma_hat;
            entry["r2_exp"] = res.fit->r2_exp;
            entry["p_hat"] = res.fit->p_hat;
            entry["r2_poly"] = res.fit->r2_poly;
        }
        summary[tag] = entry;
        std::cout << "preset " << tag << ": abscissa " << res.metrics.abscissa << ", E_norm(T) "
                  << res.E_norm_final << "\n";
    }
    auto out = open_out(fs::path(cfg.out_dir) / "summary.json");
    out << summary.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-string / interior-mass wave system laboratory"};
    app.require_subcommand(1);

    RunConfig cfg;
    CommonOpts opts;
    std::string presets_arg;

    auto* cert = app.add_subcommand("certificate", "evaluate the stability certificate");
    add_common(cert, cfg, opts);
    cert->add_option("--check", opts.eps_override,
                     "additionally check user-supplied eps1,eps2,delta");

    auto* spec = app.add_subcommand("spectrum", "eigenvalues of the discrete generator");
    add_common(spec, cfg, opts);

    auto* sim = app.add_subcommand("simulate", "time integration and energy diagnostics");
    add_common(sim, cfg, opts);

    auto* sweep = app.add_subcommand("sweep", "run damping presets and summarize");
    add_common(sweep, cfg, opts);
    sweep->add_option("--presets", presets_arg, "comma-separated preset tags (default a,b,c,d)");

    try {
        app.parse(argc, argv);
        if (cert->parsed()) return cmd_certificate(cfg, opts);
        if (spec->parsed()) return cmd_spectrum(cfg, opts);
        if (sim->parsed()) return cmd_simulate(cfg, opts);
        if (sweep->parsed()) return cmd_sweep(cfg, opts, presets_arg);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
