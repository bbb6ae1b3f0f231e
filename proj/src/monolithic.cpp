#include "fsi/monolithic.hpp"

#include <stdexcept>

namespace fsi {

namespace {

// Trace-to-area coupling blocks as explicit sparse matrices: E maps a trace
// vector to area loads (E = R^T M_sigma), C maps free area dofs to trace
// rows (C = M_sigma R restricted).
SparseMatrix trace_load_matrix(const TraceOps& tr, const std::vector<int>& area_dofs,
                               const std::vector<int>& full_to_free, int n_free) {
    Triplets t(n_free, tr.mass.cols());
    const auto off = tr.mass.row_offsets();
    const auto cols = tr.mass.col_indices();
    const auto vals = tr.mass.values();
    for (int a = 0; a < tr.mass.rows(); ++a) {
        const int row = full_to_free[area_dofs[a]];
        if (row < 0) continue;
        for (int k = off[a]; k < off[a + 1]; ++k) t.add(row, cols[k], vals[k]);
    }
    return from_triplets(t);
}

}  // namespace

MonolithicScheme::MonolithicScheme(std::shared_ptr<const CoupledProblem> problem, double dt)
    : problem_(std::move(problem)), dt_(dt) {
    if (!(dt_ > 0.0)) throw std::invalid_argument("MonolithicScheme: dt must be > 0");
    const CoupledProblem& pb = *problem_;
    const int nq = pb.solid_dofs.n_free();
    const int nu = pb.fluid_dofs.n_free();
    const int np = pb.n_pressure();
    const int nl = pb.trace.n_trace();
    const int n = nq + nu + np + nl;
    layout_ = {nq, nu, np, nl};

    std::vector<int> identity(np);
    for (int i = 0; i < np; ++i) identity[i] = i;

    const auto reds = [&](const SparseMatrix& a) {
        return a.restricted(pb.solid_dofs.full_to_free, nq, pb.solid_dofs.full_to_free, nq);
    };
    const auto redf = [&](const SparseMatrix& a) {
        return a.restricted(pb.fluid_dofs.full_to_free, nu, pb.fluid_dofs.full_to_free, nu);
    };

    Triplets t(n, n);
    // solid momentum rows
    accumulate(t, reds(pb.solid.M), pb.prm.rho_s / dt_ + dt_ / 4.0 * pb.prm.c0, 0, 0);
    accumulate(t, reds(pb.solid.K), dt_ / 4.0, 0, 0);
    const SparseMatrix Es =
        trace_load_matrix(pb.trace, pb.trace.solid_dofs, pb.solid_dofs.full_to_free, nq);
    accumulate(t, Es, 1.0, 0, nq + nu + np);
    // fluid momentum rows
    accumulate(t, redf(pb.fluid.M), pb.prm.rho_f / dt_, nq, nq);
    accumulate(t, redf(pb.fluid.A_mu), 1.0, nq, nq);
    const SparseMatrix G = pb.fluid.G.restricted(pb.fluid_dofs.full_to_free, nu, identity, np);
    accumulate(t, G, -1.0, nq, nq + nu);
    const SparseMatrix Ef =
        trace_load_matrix(pb.trace, pb.trace.fluid_dofs, pb.fluid_dofs.full_to_free, nu);
    accumulate(t, Ef, -1.0, nq, nq + nu + np);
    // pressure rows
    accumulate(t, G.transposed(), -1.0, nq + nu, nq);
    accumulate(t, pb.fluid.L_p, -pb.prm.beta_p * pb.h * pb.h, nq + nu, nq + nu);
    // kinematic constraint rows: M_sigma(u|_S) - 1/2 M_sigma(q|_S) = 1/2 M_sigma(q^n|_S)
    accumulate(t, Ef.transposed(), 1.0, nq + nu + np, nq);
    accumulate(t, Es.transposed(), -0.5, nq + nu + np, 0);

    system_ = from_triplets(t);
    factor_.emplace(system_);
}

CoupledState MonolithicScheme::step(const CoupledState& state, double p_in_next) const {
    const CoupledProblem& pb = *problem_;
    pb.prm.validate();
    const int nq = pb.solid_dofs.n_free();
    const int nu = pb.fluid_dofs.n_free();
    const int np = pb.n_pressure();
    const int nl = pb.trace.n_trace();

    std::vector<double> rhs(nq + nu + np + nl, 0.0);

    std::vector<double> rs(pb.solid_dofs.n_dofs(), 0.0);
    pb.solid.M.apply_add(state.q, rs, pb.prm.rho_s / dt_);
    std::vector<double> mid(state.eta);
    axpy(dt_ / 4.0, state.q, mid);
    pb.solid.K.apply_add(mid, rs, -1.0);
    pb.solid.M0().apply_add(mid, rs, -pb.prm.c0);
    const std::vector<double> rs_red = pb.solid_dofs.restrict_free(rs);
    for (int i = 0; i < nq; ++i) rhs[i] = rs_red[i];

    std::vector<double> rf(pb.fluid_dofs.n_dofs(), 0.0);
    pb.fluid.M.apply_add(state.u, rf, pb.prm.rho_f / dt_);
    if (p_in_next != 0.0) axpy(p_in_next, pb.fluid.inlet_unit_load, rf);
    const std::vector<double> rf_red = pb.fluid_dofs.restrict_free(rf);
    for (int i = 0; i < nu; ++i) rhs[nq + i] = rf_red[i];

    const std::vector<double> mq = pb.trace.mass.apply(pb.trace.restrict_solid(state.q));
    for (int a = 0; a < nl; ++a) rhs[nq + nu + np + a] = 0.5 * mq[a];

    const std::vector<double> x = factor_->solve(rhs);

    CoupledState next;
    next.q = pb.solid_dofs.scatter_free(std::span(x).subspan(0, nq));
    next.u = pb.fluid_dofs.scatter_free(std::span(x).subspan(nq, nu));
    next.p.assign(x.begin() + nq + nu, x.begin() + nq + nu + np);
    next.lambda.assign(x.begin() + nq + nu + np, x.end());
    next.eta = state.eta;
    axpy(dt_ / 2.0, next.q, next.eta);
    axpy(dt_ / 2.0, state.q, next.eta);
    next.t = state.t + dt_;
    return next;
}

double MonolithicScheme::constraint_residual(const CoupledState& prev,
                                             const CoupledState& next) const {
    const CoupledProblem& pb = *problem_;
    std::vector<double> diff = pb.trace.restrict_fluid(next.u);
    const std::vector<double> qh_new = pb.trace.restrict_solid(next.q);
    const std::vector<double> qh_old = pb.trace.restrict_solid(prev.q);
    for (std::size_t i = 0; i < diff.size(); ++i)
        diff[i] -= 0.5 * (qh_new[i] + qh_old[i]);
    return norm2(pb.trace.mass.apply(diff));
}

}  // namespace fsi
