#pragma once

#include <memory>

#include "fsi/fem.hpp"
#include "fsi/state.hpp"

namespace fsi {

/// Per-step energy accounting for the discrete stability identity
///   S^M + sum_{m<=M} D^m = S^0   (zero-forcing runs),
/// with
///   S^n = ||eta||_S'^2 + rho_s ||q||^2 + rho_f ||u||^2
///         + dt (alpha ||u||_S^2 + 1/alpha ||lambda||_S^2)     (Sigma norms),
///   D^n = rho_f ||u^n - u^{n-1}||^2 + 4 mu dt ||eps(u^n)||^2
///         + 2 beta_p h^2 dt ||grad p^n||^2
///         + alpha dt ||q^{n-1/2} - u^{n-1}||_Sigma^2,
/// where ||.||_S' includes the c0 mass term whenever c0 > 0 so both sides
/// of the identity use the scheme's own operators. All quadratic forms are
/// evaluated with the assembled matrices, never re-integrated.
struct EnergyBreakdown {
    double fluid_increment = 0.0;   // rho_f ||du||^2
    double viscous = 0.0;           // 4 mu dt ||eps(u)||^2
    double stabilization = 0.0;     // 2 beta_p h^2 dt ||grad p||^2
    double interface = 0.0;         // alpha dt ||q_half - u_old||_Sigma^2
    double total() const { return fluid_increment + viscous + stabilization + interface; }
};

class EnergyAccountant {
public:
    EnergyAccountant(std::shared_ptr<const CoupledProblem> problem, double dt)
        : problem_(std::move(problem)), dt_(dt) {}

    /// Total energy S of one state.
    double snapshot(const CoupledState& state) const;
    /// S without the dt-weighted interface terms (monolithic decay check).
    double core_energy(const CoupledState& state) const;
    /// Dissipation of the step prev -> cur.
    EnergyBreakdown dissipation(const CoupledState& prev, const CoupledState& cur) const;

private:
    std::shared_ptr<const CoupledProblem> problem_;
    double dt_;
};

struct EnergyLedger {
    std::vector<double> t;
    std::vector<double> S;
    std::vector<double> D;         // D[0] = 0
    std::vector<double> residual;  // S[n] + sum_{m<=n} D[m] - S[0]

    int levels() const { return static_cast<int>(S.size()); }
    void start(double time, double S0);
    void push(double time, double Sn, double Dn);
};

struct IdentityCheck {
    bool pass = false;
    double max_rel_residual = 0.0;
    int first_violation = -1;  // level of first violation, -1 if none
};

/// max_n |residual_n| / max(S_0, tiny) <= tol.
IdentityCheck check_energy_identity(const EnergyLedger& ledger, double tol);

/// Relative elastic energy-norm error sqrt(d^T K d) / sqrt(ref^T K ref),
/// d = eta - eta_ref, on a shared mesh. Throws on zero reference norm.
double elastic_error(std::span<const double> eta_ref, std::span<const double> eta,
                     const SparseMatrix& K);

/// Observed convergence rates log2(e_i / e_{i+1}) for a refinement family
/// halving the grid parameters per level. Throws on nonpositive errors.
std::vector<double> convergence_table(std::span<const double> errors);

}  // namespace fsi
