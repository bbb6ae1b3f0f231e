#include "fsi/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>

#include "fsi/harness.hpp"
#include "fsi/io.hpp"

namespace fsi {

namespace {

int cmd_run(const RunConfig& cfg, const std::string& out_dir) {
    return run_pressure_wave(cfg, out_dir);
}

int cmd_converge(const RunConfig& cfg, const std::string& out_dir, int imax, int ref_scale,
                 double ref_dt) {
    const ConvergenceStudy study = run_convergence(cfg, imax, ref_scale, ref_dt, out_dir);
    for (const SchemeErrors* s : {&study.loose, &study.corrected, &study.monolithic}) {
        std::printf("%-12s errors:", s->name.c_str());
        for (double e : s->errors) std::printf(" %.3e", e);
        std::printf("  mean rate %.3f\n", s->mean_rate);
    }
    std::printf("wrote %s/convergence.csv\n", out_dir.c_str());
    return 0;
}

int cmd_sweep_alpha(const RunConfig& cfg, const std::string& out_dir,
                    const std::vector<double>& alphas, int ref_scale, double ref_dt) {
    const auto points = sweep_alpha(cfg, alphas, ref_scale, ref_dt, out_dir);
    for (const AlphaPoint& p : points)
        std::printf("alpha %-10g error %.6e identity residual %.3e\n", p.alpha, p.error,
                    p.identity_residual);
    std::printf("wrote %s/alpha_sweep.csv\n", out_dir.c_str());
    return 0;
}

int cmd_energy_check(const RunConfig& cfg, const std::string& out_dir, int steps,
                     unsigned seed) {
    EnergyLedger ledger;
    const IdentityCheck check = run_energy_identity(cfg, steps, seed, 1e-9, &ledger);
    std::filesystem::create_directories(out_dir);
    write_ledger_csv(out_dir + "/energy_check.csv", ledger);
    std::printf("energy identity over %d steps: max relative residual %.3e -> %s\n", steps,
                check.max_rel_residual, check.pass ? "PASS" : "FAIL");
    return check.pass ? 0 : 2;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Loosely coupled Robin-Robin FSI benchmark driver"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "./out";
    int imax = 2;
    int ref_scale = 8;
    double ref_dt = 0.0;  // 0: dt/40 of the configured base
    std::vector<double> alphas = {50.0, 500.0, 5000.0};
    int steps = 50;
    unsigned seed = 1u;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file")->required();
        cmd->add_option("--out", out_dir, "output directory (default ./out)");
    };

    CLI::App* run = app.add_subcommand("run", "pressure-wave benchmark run");
    add_common(run);

    CLI::App* conv = app.add_subcommand("converge", "space-time refinement study");
    add_common(conv);
    conv->add_option("--imax", imax, "finest refinement level (levels 0..imax)");
    conv->add_option("--ref-scale", ref_scale, "reference mesh refinement factor");
    conv->add_option("--ref-dt", ref_dt, "reference time step (default dt/40)");

    CLI::App* sweep = app.add_subcommand("sweep-alpha", "error vs Robin parameter");
    add_common(sweep);
    sweep->add_option("--alphas", alphas, "Robin parameters to sweep");
    sweep->add_option("--ref-scale", ref_scale, "reference mesh refinement factor");
    sweep->add_option("--ref-dt", ref_dt, "reference time step (default dt/40)");

    CLI::App* energy = app.add_subcommand("energy-check", "discrete energy identity check");
    add_common(energy);
    energy->add_option("--steps", steps, "number of time steps (default 50)");
    energy->add_option("--seed", seed, "seed of the random initial state");

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const RunConfig cfg = load_config(config_path);
        if (ref_dt == 0.0) ref_dt = cfg.dt / 40.0;
        if (run->parsed()) return cmd_run(cfg, out_dir);
        if (conv->parsed()) return cmd_converge(cfg, out_dir, imax, ref_scale, ref_dt);
        if (sweep->parsed()) return cmd_sweep_alpha(cfg, out_dir, alphas, ref_scale, ref_dt);
        if (energy->parsed()) return cmd_energy_check(cfg, out_dir, steps, seed);
    } catch (const SolveError& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}

}  // namespace fsi
