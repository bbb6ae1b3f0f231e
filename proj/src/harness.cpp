#include "fsi/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "fsi/io.hpp"

namespace fsi {

RunConfig benchmark_config() {
    RunConfig cfg;
    cfg.L = 6.0;
    cfg.R = 0.5;
    cfg.eps = 0.1;
    cfg.nx = 120;
    cfg.ny_f = 10;
    cfg.ny_s = 2;
    cfg.dt = 2.5e-4;
    cfg.T = 1.5e-2;
    cfg.params.rho_f = 1.0;
    cfg.params.rho_s = 1.1;
    cfg.params.mu = 0.035;
    cfg.params.L1 = 1.15e6;
    cfg.params.L2 = 1.7e6;
    cfg.params.c0 = 4.0e6;
    cfg.params.alpha = 500.0;
    cfg.params.beta_p = 1e-3 / cfg.params.mu;
    cfg.inlet_amplitude = 2.0e4;
    cfg.inlet_half_period = 5.0e-3;
    cfg.snapshot_times = {5e-3, 1e-2, 1.5e-2};
    return cfg;
}

std::shared_ptr<const CoupledProblem> build_problem(const RunConfig& cfg) {
    cfg.validate();
    const ChannelPair geo = build_channel_pair(cfg.L, cfg.R, cfg.eps, cfg.nx, cfg.ny_f, cfg.ny_s);
    return std::make_shared<CoupledProblem>(CoupledProblem::build(geo, cfg.params));
}

CoupledState random_state(const CoupledProblem& pb, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    CoupledState s = pb.zero_state();
    for (int d : pb.fluid_dofs.free_dofs) s.u[d] = dist(gen);
    for (int d : pb.solid_dofs.free_dofs) s.q[d] = dist(gen);
    for (int d : pb.solid_dofs.free_dofs) s.eta[d] = dist(gen);
    for (double& v : s.lambda) v = dist(gen);
    return s;
}

InletPressure make_inlet(const RunConfig& cfg) {
    const double amp = cfg.inlet_amplitude;
    const double hp = cfg.inlet_half_period;
    return [amp, hp](double t) { return inlet_pressure(t, amp, hp); };
}

StepFn make_stepper(const RunConfig& cfg, std::shared_ptr<const CoupledProblem> pb,
                    std::shared_ptr<const RobinScheme>* robin_out) {
    if (cfg.scheme == SchemeKind::Monolithic) {
        auto scheme = std::make_shared<MonolithicScheme>(pb, cfg.dt);
        return [scheme](const CoupledState& s, double p_in) { return scheme->step(s, p_in); };
    }
    auto scheme = std::make_shared<RobinScheme>(pb, cfg.dt);
    if (robin_out) *robin_out = scheme;
    const int k = cfg.n_corrections;
    return [scheme, k](const CoupledState& s, double p_in) { return scheme->advance(s, p_in, k); };
}

IdentityCheck run_energy_identity(const RunConfig& cfg, int n_steps, unsigned seed, double tol,
                                  EnergyLedger* ledger_out) {
    auto pb = build_problem(cfg);
    const RobinScheme scheme(pb, cfg.dt);
    const EnergyAccountant acc(pb, cfg.dt);

    const CoupledState initial = random_state(*pb, seed);
    EnergyLedger ledger;
    ledger.start(initial.t, acc.snapshot(initial));

    RunOptions opts;
    opts.observer = [&](int, const CoupledState& prev, const CoupledState& cur) {
        ledger.push(cur.t, acc.snapshot(cur), acc.dissipation(prev, cur).total());
    };
    const StepFn step = [&](const CoupledState& s, double p_in) {
        return scheme.advance(s, p_in, 0);
    };
    run_time_loop(step, initial, {cfg.dt, n_steps}, [](double) { return 0.0; }, opts);

    if (ledger_out) *ledger_out = ledger;
    return check_energy_identity(ledger, tol);
}

void write_ledger_csv(const std::string& path, const EnergyLedger& ledger) {
    CsvWriter csv(path, {"n", "t", "S", "D", "residual"});
    for (int n = 0; n < ledger.levels(); ++n)
        csv.row({static_cast<double>(n), ledger.t[n], ledger.S[n], ledger.D[n],
                 ledger.residual[n]});
}

namespace {

std::string snapshot_name(const std::string& prefix, const char* domain, int k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "_%s_%03d.vtk", domain, k);
    return prefix + buf;
}

std::vector<double> component(std::span<const double> interleaved, int c) {
    std::vector<double> out(interleaved.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = interleaved[2 * i + c];
    return out;
}

/// P1 prolongation of an interleaved vector field from a structured source
/// mesh onto the vertices of a target mesh.
std::vector<double> prolong_field(const Rect& src_rect, int src_nx, int src_ny,
                                  std::span<const double> src_field, const Mesh& target) {
    std::vector<double> out(2 * target.n_vertices());
    for (int c = 0; c < 2; ++c) {
        const std::vector<double> vals = component(src_field, c);
        for (int v = 0; v < target.n_vertices(); ++v)
            out[2 * v + c] = eval_p1_structured(src_rect, src_nx, src_ny, vals, target.vertices[v]);
    }
    return out;
}

struct WaveOutputs {
    std::unique_ptr<CsvWriter> series;
    std::unique_ptr<CsvWriter> energy;
};

}  // namespace

int run_pressure_wave(const RunConfig& cfg, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    auto pb = build_problem(cfg);
    const StepFn step = make_stepper(cfg, pb);
    const EnergyAccountant acc(pb, cfg.dt);
    const std::string prefix = out_dir + "/" + cfg.csv_prefix;

    // interface midpoint (solid side) displacement probe
    const int k_mid = pb->imap.n_nodes() / 2;
    const int v_mid = pb->imap.solid_nodes[k_mid];

    CsvWriter series(prefix + "_series.csv", {"n", "t", "eta_mid_x", "eta_mid_y", "p_in"});
    CsvWriter energy(prefix + "_energy.csv", {"n", "t", "S", "D", "residual"});

    const InletPressure p_in = make_inlet(cfg);
    CoupledState state = pb->zero_state();
    EnergyLedger ledger;
    ledger.start(0.0, acc.snapshot(state));
    series.row({0.0, 0.0, 0.0, 0.0, p_in(0.0)});
    energy.row({0.0, 0.0, ledger.S[0], 0.0, 0.0});

    std::vector<int> snapshot_steps;
    for (double ts : cfg.snapshot_times)
        snapshot_steps.push_back(static_cast<int>(std::llround(ts / cfg.dt)));

    auto maybe_snapshot = [&](int n, const CoupledState& s) {
        if (!cfg.write_vtk) return;
        for (std::size_t k = 0; k < snapshot_steps.size(); ++k) {
            if (snapshot_steps[k] != n) continue;
            write_vtk(snapshot_name(prefix, "fluid", static_cast<int>(k)), pb->fluid_mesh, s.u,
                      {}, s.p);
            write_vtk(snapshot_name(prefix, "solid", static_cast<int>(k)), pb->solid_mesh, s.q,
                      s.eta, {});
        }
    };
    maybe_snapshot(0, state);

    const int n_steps = cfg.n_steps();
    for (int n = 1; n <= n_steps; ++n) {
        CoupledState next;
        try {
            next = step(state, p_in(state.t + cfg.dt));
        } catch (const SolveError& e) {
            std::fprintf(stderr, "solver failure at time level %d: %s\n", n, e.what());
            series.flush();
            energy.flush();
            return 2;
        }
        ledger.push(next.t, acc.snapshot(next), acc.dissipation(state, next).total());
        state = std::move(next);
        series.row({static_cast<double>(n), state.t, state.eta[2 * v_mid],
                    state.eta[2 * v_mid + 1], p_in(state.t)});
        energy.row({static_cast<double>(n), state.t, ledger.S[n], ledger.D[n],
                    ledger.residual[n]});
        maybe_snapshot(n, state);
    }
    return 0;
}

RunConfig refined(const RunConfig& base, int factor, double dt) {
    RunConfig cfg = base;
    cfg.nx = base.nx * factor;
    cfg.ny_f = base.ny_f * factor;
    cfg.ny_s = base.ny_s * factor;
    cfg.dt = dt;
    return cfg;
}

CoupledState final_state_of(const RunConfig& cfg) {
    auto pb = build_problem(cfg);
    const StepFn step = make_stepper(cfg, pb);
    const RunResult res =
        run_time_loop(step, pb->zero_state(), {cfg.dt, cfg.n_steps()}, make_inlet(cfg));
    return res.final_state;
}

ReferenceSolution compute_reference(const RunConfig& base, int ref_scale, double ref_dt) {
    ReferenceSolution ref;
    ref.cfg = refined(base, ref_scale, ref_dt);
    ref.cfg.scheme = SchemeKind::Monolithic;
    ref.cfg.n_corrections = 0;
    ref.state = final_state_of(ref.cfg);
    ref.solid_rect = {0.0, base.L, base.R, base.R + base.eps};
    ref.solid_mesh = build_rect_mesh(ref.solid_rect, ref.cfg.nx, ref.cfg.ny_s);
    // error norm of the accuracy tables: the a_s-induced norm, c0 excluded
    ref.K = assemble_solid(ref.solid_mesh, base.params).K;
    return ref;
}

double error_vs_reference(const ReferenceSolution& ref, const RunConfig& level_cfg,
                          std::span<const double> eta) {
    const std::vector<double> eta_on_ref =
        prolong_field(ref.solid_rect, level_cfg.nx, level_cfg.ny_s, eta, ref.solid_mesh);
    return elastic_error(ref.state.eta, eta_on_ref, ref.K);
}

ConvergenceStudy run_convergence(const RunConfig& cfg, int imax, const ReferenceSolution& ref,
                                 const std::string& out_dir) {
    ConvergenceStudy study;
    study.loose.name = "loose";
    study.corrected.name = "loose+1corr";
    study.monolithic.name = "monolithic";

    for (int i = 0; i <= imax; ++i) {
        const RunConfig level = refined(cfg, 1 << i, cfg.dt / (1 << i));
        study.level_nx.push_back(level.nx);
        study.level_dt.push_back(level.dt);

        auto run_error = [&](SchemeKind scheme, int k) {
            RunConfig c = level;
            c.scheme = scheme;
            c.n_corrections = k;
            return error_vs_reference(ref, c, final_state_of(c).eta);
        };

        study.loose.errors.push_back(run_error(SchemeKind::Loose, 0));
        study.corrected.errors.push_back(run_error(SchemeKind::Loose, 1));
        study.monolithic.errors.push_back(run_error(SchemeKind::Monolithic, 0));
    }

    for (SchemeErrors* s : {&study.loose, &study.corrected, &study.monolithic}) {
        s->rates = convergence_table(s->errors);
        double sum = 0.0;
        for (double r : s->rates) sum += r;
        s->mean_rate = sum / static_cast<double>(s->rates.size());
    }

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        CsvWriter csv(out_dir + "/convergence.csv",
                      {"scheme", "level", "nx", "dt", "error", "rate"});
        for (const SchemeErrors* s : {&study.loose, &study.corrected, &study.monolithic}) {
            for (std::size_t i = 0; i < s->errors.size(); ++i)
                csv.row_text({s->name, std::to_string(i), std::to_string(study.level_nx[i]),
                              CsvWriter::format(study.level_dt[i]),
                              CsvWriter::format(s->errors[i]),
                              i < s->rates.size() ? CsvWriter::format(s->rates[i]) : ""});
        }
    }
    return study;
}

ConvergenceStudy run_convergence(const RunConfig& cfg, int imax, int ref_scale, double ref_dt,
                                 const std::string& out_dir) {
    return run_convergence(cfg, imax, compute_reference(cfg, ref_scale, ref_dt), out_dir);
}

std::vector<AlphaPoint> sweep_alpha(const RunConfig& cfg, const std::vector<double>& alphas,
                                    const ReferenceSolution& ref, const std::string& out_dir) {
    for (double a : alphas)
        if (!(a > 0.0)) throw std::invalid_argument("sweep_alpha: alphas must be positive");

    std::vector<AlphaPoint> points;
    for (double a : alphas) {
        RunConfig c = cfg;
        c.scheme = SchemeKind::Loose;
        c.params.alpha = a;

        AlphaPoint p;
        p.alpha = a;
        p.error = error_vs_reference(ref, c, final_state_of(c).eta);
        p.identity_residual = run_energy_identity(c, 50, 2024u).max_rel_residual;
        points.push_back(p);
    }

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        CsvWriter csv(out_dir + "/alpha_sweep.csv", {"alpha", "error", "identity_residual"});
        for (const AlphaPoint& p : points) csv.row({p.alpha, p.error, p.identity_residual});
    }
    return points;
}

std::vector<AlphaPoint> sweep_alpha(const RunConfig& cfg, const std::vector<double>& alphas,
                                    int ref_scale, double ref_dt, const std::string& out_dir) {
    return sweep_alpha(cfg, alphas, compute_reference(cfg, ref_scale, ref_dt), out_dir);
}

}  // namespace fsi
