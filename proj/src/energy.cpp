#include "fsi/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fsi {

double EnergyAccountant::core_energy(const CoupledState& state) const {
    const CoupledProblem& pb = *problem_;
    double s = pb.solid.K.quad(state.eta, state.eta);
    if (pb.prm.c0 > 0.0) s += pb.prm.c0 * pb.solid.M0().quad(state.eta, state.eta);
    s += pb.prm.rho_s * pb.solid.M.quad(state.q, state.q);
    s += pb.prm.rho_f * pb.fluid.M.quad(state.u, state.u);
    return s;
}

double EnergyAccountant::snapshot(const CoupledState& state) const {
    const CoupledProblem& pb = *problem_;
    const std::vector<double> ut = pb.trace.restrict_fluid(state.u);
    double s = core_energy(state);
    s += dt_ * pb.prm.alpha * pb.trace.norm_sq(ut);
    s += dt_ / pb.prm.alpha * pb.trace.norm_sq(state.lambda);
    return s;
}

EnergyBreakdown EnergyAccountant::dissipation(const CoupledState& prev,
                                              const CoupledState& cur) const {
    const CoupledProblem& pb = *problem_;
    EnergyBreakdown d;

    std::vector<double> du(cur.u.size());
    for (std::size_t i = 0; i < du.size(); ++i) du[i] = cur.u[i] - prev.u[i];
    d.fluid_increment = pb.prm.rho_f * pb.fluid.M.quad(du, du);

    // u^T A_mu u = 2 mu ||eps(u)||^2
    d.viscous = 2.0 * dt_ * pb.fluid.A_mu.quad(cur.u, cur.u);
    d.stabilization = 2.0 * dt_ * pb.prm.beta_p * pb.h * pb.h * pb.fluid.L_p.quad(cur.p, cur.p);

    std::vector<double> diff = pb.trace.restrict_solid(cur.q);
    const std::vector<double> qt_old = pb.trace.restrict_solid(prev.q);
    const std::vector<double> ut_old = pb.trace.restrict_fluid(prev.u);
    for (std::size_t i = 0; i < diff.size(); ++i)
        diff[i] = 0.5 * (diff[i] + qt_old[i]) - ut_old[i];
    d.interface = pb.prm.alpha * dt_ * pb.trace.norm_sq(diff);
    return d;
}

void EnergyLedger::start(double time, double S0) {
    t.assign(1, time);
    S.assign(1, S0);
    D.assign(1, 0.0);
    residual.assign(1, 0.0);
}

void EnergyLedger::push(double time, double Sn, double Dn) {
    if (S.empty()) throw std::logic_error("EnergyLedger::push before start");
    t.push_back(time);
    S.push_back(Sn);
    D.push_back(Dn);
    residual.push_back(residual.back() + (Sn - S[S.size() - 2]) + Dn);
}

IdentityCheck check_energy_identity(const EnergyLedger& ledger, double tol) {
    IdentityCheck c;
    if (ledger.levels() == 0) return c;
    const double scale = std::max(ledger.S[0], 1e-300);
    for (int n = 0; n < ledger.levels(); ++n) {
        const double rel = std::abs(ledger.residual[n]) / scale;
        if (rel > c.max_rel_residual) c.max_rel_residual = rel;
        if (rel > tol && c.first_violation < 0) c.first_violation = n;
    }
    c.pass = c.first_violation < 0;
    return c;
}

double elastic_error(std::span<const double> eta_ref, std::span<const double> eta,
                     const SparseMatrix& K) {
    const double ref = K.quad(eta_ref, eta_ref);
    if (!(ref > 0.0)) throw std::invalid_argument("elastic_error: zero reference norm");
    std::vector<double> d(eta.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = eta[i] - eta_ref[i];
    return std::sqrt(K.quad(d, d) / ref);
}

std::vector<double> convergence_table(std::span<const double> errors) {
    if (errors.size() < 2)
        throw std::invalid_argument("convergence_table: need at least two levels");
    std::vector<double> rates;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        if (!(errors[i] > 0.0) || !(errors[i + 1] > 0.0))
            throw std::invalid_argument("convergence_table: errors must be positive");
        rates.push_back(std::log2(errors[i] / errors[i + 1]));
    }
    return rates;
}

}  // namespace fsi
