#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "fsi/fem.hpp"
#include "fsi/solvers.hpp"
#include "fsi/state.hpp"

namespace fsi {

/// Nodewise interface traction update
///   lambda_new = alpha (q_half - u_new) + lambda_old   on the trace dofs.
std::vector<double> multiplier_update_pointwise(std::span<const double> lambda_old,
                                                std::span<const double> q_half_trace,
                                                std::span<const double> u_new_trace,
                                                double alpha);

/// Loosely coupled Robin-Robin time stepping: a midpoint solid step with
/// Robin data, a backward-Euler fluid step with Robin data, and the
/// pointwise multiplier update. Both subproblem matrices are constant in
/// time and factorized once.
class RobinScheme {
public:
    RobinScheme(std::shared_ptr<const CoupledProblem> problem, double dt);

    const CoupledProblem& problem() const { return *problem_; }
    double dt() const { return dt_; }
    /// reduced (free-dof) system matrices, e.g. for spectral checks
    const SparseMatrix& solid_system() const { return solid_sys_; }
    const SparseMatrix& fluid_system() const { return fluid_sys_; }

    /// Solid subproblem: solves the SPD system for q_new with Robin data
    /// (u_trace, lambda) and recovers eta_new = eta + dt/2 (q_new + q).
    ///   [rho_s/dt M + dt/4 K' + alpha/2 B] q_new =
    ///       rho_s/dt M q - K'(eta + dt/4 q) - alpha/2 B q
    ///       + alpha E_s u_trace - E_s lambda,           K' = K + c0 M0.
    struct SolidResult {
        std::vector<double> q;
        std::vector<double> eta;
    };
    SolidResult solid_step(const CoupledState& state, std::span<const double> u_trace,
                           std::span<const double> lambda) const;

    /// Fluid subproblem: symmetric indefinite block solve for (u_new, p_new),
    ///   [ rho_f/dt M + A_mu + alpha B   -G      ] [u]   [rhs_u]
    ///   [ -G^T                 -beta_p h^2 L_p  ] [p] = [  0  ]
    /// with rhs_u = rho_f/dt M u + alpha E_f q_half + E_f lambda + p_in T_in.
    struct FluidResult {
        std::vector<double> u;
        std::vector<double> p;
    };
    FluidResult fluid_step(const CoupledState& state, std::span<const double> q_half_trace,
                           std::span<const double> lambda, double p_in) const;

    /// One time level: (solid, fluid, multiplier) executed once, plus
    /// n_corrections additional sweeps that consume the latest interface
    /// data at the frozen time level (Gauss-Seidel defect correction whose
    /// fixed point is the monolithic solution).
    CoupledState advance(const CoupledState& state, double p_in_next,
                         int n_corrections = 0) const;

private:
    std::shared_ptr<const CoupledProblem> problem_;
    double dt_;
    SparseMatrix solid_sys_;
    SparseMatrix fluid_sys_;
    std::optional<SpdFactor> solid_factor_;
    std::optional<LuFactor> fluid_factor_;
};

using InletPressure = std::function<double(double)>;
using StepFn = std::function<CoupledState(const CoupledState&, double p_in_next)>;

struct RunResult {
    CoupledState final_state;
    std::vector<std::pair<int, CoupledState>> snapshots;  // (step index, state)
    std::vector<CoupledState> all_states;                 // only when record_all
};

struct RunOptions {
    std::vector<int> snapshot_steps;
    bool record_all = false;
    /// called after every accepted step
    std::function<void(int step, const CoupledState& prev, const CoupledState& cur)> observer;
};

/// Executes grid.n_steps advances from the initial state; the inlet datum
/// is evaluated at the target level t+dt of every step. Solver failures are
/// annotated with the failing time level and rethrown.
RunResult run_time_loop(const StepFn& step, const CoupledState& initial, TimeGrid grid,
                        const InletPressure& p_in, const RunOptions& opts = {});

}  // namespace fsi
