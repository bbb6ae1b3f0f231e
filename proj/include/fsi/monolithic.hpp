#pragma once

#include <memory>
#include <optional>

#include "fsi/fem.hpp"
#include "fsi/solvers.hpp"
#include "fsi/state.hpp"

namespace fsi {

/// Strongly coupled reference scheme: one block solve per step over
/// (q, u, p, lambda) with the same per-field time discretizations as the
/// loosely coupled scheme (midpoint solid, backward-Euler fluid), so the
/// only difference is the implicit treatment of the interface conditions:
///   solid row:   rho_s d_t q + a_s(eta^{n+1/2}, .) + <lambda, .>      = 0
///   fluid rows:  rho_f d_t u + a_{f,h}((u,p), .)   - <lambda, .>      = 0
///   constraint:  <u^{n+1} - q^{n+1/2}, mu>                            = 0.
class MonolithicScheme {
public:
    MonolithicScheme(std::shared_ptr<const CoupledProblem> problem, double dt);

    const CoupledProblem& problem() const { return *problem_; }
    double dt() const { return dt_; }

    /// Block layout of the coupled system, unknowns ordered (q, u, p, lambda).
    struct BlockLayout {
        int n_q = 0, n_u = 0, n_p = 0, n_lambda = 0;
        int total() const { return n_q + n_u + n_p + n_lambda; }
    };
    const BlockLayout& layout() const { return layout_; }
    const SparseMatrix& system() const { return system_; }

    CoupledState step(const CoupledState& state, double p_in_next) const;

    /// ||M_sigma (u|_S - q^{n+1/2}|_S)|| of the kinematic constraint,
    /// recomputable for any state pair.
    double constraint_residual(const CoupledState& prev, const CoupledState& next) const;

private:
    std::shared_ptr<const CoupledProblem> problem_;
    double dt_;
    BlockLayout layout_;
    SparseMatrix system_;
    std::optional<LuFactor> factor_;
};

}  // namespace fsi
