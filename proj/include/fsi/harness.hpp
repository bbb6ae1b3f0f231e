#pragma once

#include <memory>
#include <string>

#include "fsi/config.hpp"
#include "fsi/energy.hpp"
#include "fsi/monolithic.hpp"
#include "fsi/stepping.hpp"

namespace fsi {

/// The pressure-wave benchmark settings (CGS): 6 cm channel of radius 0.5
/// under a 0.1 cm thick solid strip, half-sine inlet pulse of amplitude
/// 2e4 over 5e-3 s, run to T = 1.5e-2 s.
RunConfig benchmark_config();

std::shared_ptr<const CoupledProblem> build_problem(const RunConfig& cfg);

/// Fills all free dofs of (u, q, eta) and the whole multiplier with
/// deterministic uniform[-1,1] samples; constrained dofs stay zero.
CoupledState random_state(const CoupledProblem& pb, unsigned seed);

InletPressure make_inlet(const RunConfig& cfg);

/// StepFn for the configured scheme (loose with corrections or monolithic).
StepFn make_stepper(const RunConfig& cfg, std::shared_ptr<const CoupledProblem> pb,
                    std::shared_ptr<const RobinScheme>* robin_out = nullptr);

/// Zero-forcing run from a random nonzero state; returns the Lemma-style
/// identity check of the resulting ledger.
IdentityCheck run_energy_identity(const RunConfig& cfg, int n_steps, unsigned seed,
                                  double tol = 1e-9, EnergyLedger* ledger_out = nullptr);

/// Full benchmark run with CSV (and optional VTK) artifacts under out_dir.
/// Returns 0 on success, 2 on solver failure (partial outputs flushed).
int run_pressure_wave(const RunConfig& cfg, const std::string& out_dir);

/// Resolution-scaled copy of a configuration (nx, ny_f, ny_s multiplied,
/// dt replaced).
RunConfig refined(const RunConfig& base, int factor, double dt);

/// Zero-initial-state run of the configured scheme to t = T.
CoupledState final_state_of(const RunConfig& cfg);

/// Strongly coupled desk-scale reference solution plus the mesh and elastic
/// stiffness used to measure errors against it.
struct ReferenceSolution {
    RunConfig cfg;
    CoupledState state;
    Rect solid_rect;
    Mesh solid_mesh;
    SparseMatrix K;  // a_s stiffness on the reference mesh (c0 excluded)
};

ReferenceSolution compute_reference(const RunConfig& base, int ref_scale, double ref_dt);

/// Relative elastic energy-norm distance of a coarse-level displacement to
/// the reference, after P1 prolongation onto the reference mesh.
double error_vs_reference(const ReferenceSolution& ref, const RunConfig& level_cfg,
                          std::span<const double> eta);

struct SchemeErrors {
    std::string name;
    std::vector<double> errors;  // relative elastic energy-norm at T, per level
    std::vector<double> rates;
    double mean_rate = 0.0;
};

struct ConvergenceStudy {
    SchemeErrors loose;       // no correction
    SchemeErrors corrected;   // one correction sweep
    SchemeErrors monolithic;
    std::vector<int> level_nx;
    std::vector<double> level_dt;
};

/// Refinement study of the configured benchmark: level i runs at
/// (nx 2^i, dt/2^i) for i = 0..imax. Errors are measured in the relative
/// elastic energy norm at t = T.
ConvergenceStudy run_convergence(const RunConfig& cfg, int imax, const ReferenceSolution& ref,
                                 const std::string& out_dir);
ConvergenceStudy run_convergence(const RunConfig& cfg, int imax, int ref_scale, double ref_dt,
                                 const std::string& out_dir);

struct AlphaPoint {
    double alpha;
    double error;              // vs monolithic reference at fixed (dt, h)
    double identity_residual;  // zero-forcing identity residual at this alpha
};

std::vector<AlphaPoint> sweep_alpha(const RunConfig& cfg, const std::vector<double>& alphas,
                                    const ReferenceSolution& ref, const std::string& out_dir);
std::vector<AlphaPoint> sweep_alpha(const RunConfig& cfg, const std::vector<double>& alphas,
                                    int ref_scale, double ref_dt, const std::string& out_dir);

void write_ledger_csv(const std::string& path, const EnergyLedger& ledger);

}  // namespace fsi
