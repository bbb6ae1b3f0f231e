#include "fsi/stepping.hpp"

#include <stdexcept>
#include <string>

namespace fsi {

std::vector<double> multiplier_update_pointwise(std::span<const double> lambda_old,
                                                std::span<const double> q_half_trace,
                                                std::span<const double> u_new_trace,
                                                double alpha) {
    std::vector<double> out(lambda_old.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = alpha * (q_half_trace[i] - u_new_trace[i]) + lambda_old[i];
    return out;
}

namespace {

SparseMatrix build_solid_system(const CoupledProblem& pb, double dt) {
    const auto& dm = pb.solid_dofs;
    const int n = dm.n_free();
    Triplets t(n, n);
    const auto red = [&](const SparseMatrix& a) {
        return a.restricted(dm.full_to_free, n, dm.full_to_free, n);
    };
    accumulate(t, red(pb.solid.M), pb.prm.rho_s / dt + dt / 4.0 * pb.prm.c0);
    accumulate(t, red(pb.solid.K), dt / 4.0);
    accumulate(t, red(pb.solid.B), pb.prm.alpha / 2.0);
    return from_triplets(t);
}

SparseMatrix build_fluid_system(const CoupledProblem& pb, double dt) {
    const auto& dm = pb.fluid_dofs;
    const int nu = dm.n_free();
    const int np = pb.n_pressure();
    std::vector<int> identity(np);
    for (int i = 0; i < np; ++i) identity[i] = i;

    Triplets t(nu + np, nu + np);
    const auto red = [&](const SparseMatrix& a) {
        return a.restricted(dm.full_to_free, nu, dm.full_to_free, nu);
    };
    accumulate(t, red(pb.fluid.M), pb.prm.rho_f / dt);
    accumulate(t, red(pb.fluid.A_mu), 1.0);
    accumulate(t, red(pb.fluid.B), pb.prm.alpha);
    const SparseMatrix G = pb.fluid.G.restricted(dm.full_to_free, nu, identity, np);
    accumulate(t, G, -1.0, 0, nu);
    accumulate(t, G.transposed(), -1.0, nu, 0);
    accumulate(t, pb.fluid.L_p, -pb.prm.beta_p * pb.h * pb.h, nu, nu);
    return from_triplets(t);
}

}  // namespace

RobinScheme::RobinScheme(std::shared_ptr<const CoupledProblem> problem, double dt)
    : problem_(std::move(problem)), dt_(dt) {
    if (!(dt_ > 0.0)) throw std::invalid_argument("RobinScheme: dt must be > 0");
    solid_sys_ = build_solid_system(*problem_, dt_);
    fluid_sys_ = build_fluid_system(*problem_, dt_);
    solid_factor_.emplace(solid_sys_);
    fluid_factor_.emplace(fluid_sys_);
}

RobinScheme::SolidResult RobinScheme::solid_step(const CoupledState& state,
                                                 std::span<const double> u_trace,
                                                 std::span<const double> lambda) const {
    const CoupledProblem& pb = *problem_;
    const auto& dm = pb.solid_dofs;
    const double a = pb.prm.alpha;

    std::vector<double> rhs(dm.n_dofs(), 0.0);
    pb.solid.M.apply_add(state.q, rhs, pb.prm.rho_s / dt_);
    // -K'(eta + dt/4 q) with K' = K + c0 M
    std::vector<double> mid(state.eta);
    axpy(dt_ / 4.0, state.q, mid);
    pb.solid.K.apply_add(mid, rhs, -1.0);
    pb.solid.M0().apply_add(mid, rhs, -pb.prm.c0);
    pb.solid.B.apply_add(state.q, rhs, -a / 2.0);
    pb.trace.add_interface_load(u_trace, rhs, /*solid_side=*/true, a);
    pb.trace.add_interface_load(lambda, rhs, /*solid_side=*/true, -1.0);

    const std::vector<double> x = solid_factor_->solve(dm.restrict_free(rhs));

    SolidResult r;
    r.q = dm.scatter_free(x);
    r.eta = state.eta;
    axpy(dt_ / 2.0, r.q, r.eta);
    axpy(dt_ / 2.0, state.q, r.eta);
    return r;
}

RobinScheme::FluidResult RobinScheme::fluid_step(const CoupledState& state,
                                                 std::span<const double> q_half_trace,
                                                 std::span<const double> lambda,
                                                 double p_in) const {
    const CoupledProblem& pb = *problem_;
    const auto& dm = pb.fluid_dofs;
    const int nu = dm.n_free();
    const int np = pb.n_pressure();

    std::vector<double> rhs_u(dm.n_dofs(), 0.0);
    pb.fluid.M.apply_add(state.u, rhs_u, pb.prm.rho_f / dt_);
    pb.trace.add_interface_load(q_half_trace, rhs_u, /*solid_side=*/false, pb.prm.alpha);
    pb.trace.add_interface_load(lambda, rhs_u, /*solid_side=*/false, 1.0);
    if (p_in != 0.0) axpy(p_in, pb.fluid.inlet_unit_load, rhs_u);

    std::vector<double> rhs(nu + np, 0.0);
    const std::vector<double> ru = dm.restrict_free(rhs_u);
    for (int i = 0; i < nu; ++i) rhs[i] = ru[i];

    const std::vector<double> x = fluid_factor_->solve(rhs);

    FluidResult r;
    r.u = dm.scatter_free(std::span(x).subspan(0, nu));
    r.p.assign(x.begin() + nu, x.end());
    return r;
}

CoupledState RobinScheme::advance(const CoupledState& state, double p_in_next,
                                  int n_corrections) const {
    const CoupledProblem& pb = *problem_;
    pb.prm.validate();
    if (n_corrections < 0) throw std::invalid_argument("advance: n_corrections must be >= 0");

    std::vector<double> u_trace = pb.trace.restrict_fluid(state.u);
    std::vector<double> lambda = state.lambda;

    SolidResult s;
    FluidResult f;
    std::vector<double> q_half_trace;
    for (int sweep = 0; sweep <= n_corrections; ++sweep) {
        s = solid_step(state, u_trace, lambda);
        std::vector<double> q_half(s.q);
        for (std::size_t i = 0; i < q_half.size(); ++i)
            q_half[i] = 0.5 * (q_half[i] + state.q[i]);
        q_half_trace = pb.trace.restrict_solid(q_half);
        f = fluid_step(state, q_half_trace, lambda, p_in_next);
        const std::vector<double> u_new_trace = pb.trace.restrict_fluid(f.u);
        lambda = multiplier_update_pointwise(lambda, q_half_trace, u_new_trace, pb.prm.alpha);
        u_trace = u_new_trace;
    }

    CoupledState next;
    next.u = std::move(f.u);
    next.p = std::move(f.p);
    next.q = std::move(s.q);
    next.eta = std::move(s.eta);
    next.lambda = std::move(lambda);
    next.t = state.t + dt_;
    return next;
}

RunResult run_time_loop(const StepFn& step, const CoupledState& initial, TimeGrid grid,
                        const InletPressure& p_in, const RunOptions& opts) {
    if (!(grid.dt > 0.0)) throw std::invalid_argument("run_time_loop: dt must be > 0");
    RunResult res;
    res.final_state = initial;
    if (opts.record_all) res.all_states.push_back(initial);
    for (int snap : opts.snapshot_steps)
        if (snap == 0) res.snapshots.emplace_back(0, initial);

    for (int n = 0; n < grid.n_steps; ++n) {
        CoupledState next;
        try {
            next = step(res.final_state, p_in(res.final_state.t + grid.dt));
        } catch (const SolveError& e) {
            throw SolveError("time level " + std::to_string(n + 1) + ": " + e.what(),
                             e.achieved_residual);
        }
        if (opts.observer) opts.observer(n + 1, res.final_state, next);
        res.final_state = std::move(next);
        if (opts.record_all) res.all_states.push_back(res.final_state);
        for (int snap : opts.snapshot_steps)
            if (snap == n + 1) res.snapshots.emplace_back(n + 1, res.final_state);
    }
    return res;
}

}  // namespace fsi
