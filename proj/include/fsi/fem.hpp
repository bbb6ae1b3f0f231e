#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "fsi/mesh.hpp"
#include "fsi/sparse.hpp"
#include "fsi/state.hpp"

namespace fsi {

/// Material and coupling constants in CGS units.
struct PhysicalParams {
    double rho_f = 0.0;   // fluid density (g/cm^3)
    double rho_s = 0.0;   // solid density
    double mu = 0.0;      // fluid viscosity (poise)
    double L1 = 0.0;      // first Lame constant (dyn/cm^2)
    double L2 = 0.0;      // second Lame constant
    double c0 = 0.0;      // zeroth-order solid coefficient (dyn/cm^4)
    double alpha = 0.0;   // Robin parameter
    double beta_p = 1.0;  // pressure-stabilization multiplier of h^2

    void validate() const;  // throws std::invalid_argument on violation
};

enum class ComponentMask : unsigned { None = 0, X = 1, Y = 2, Both = 3 };

/// Which velocity/displacement components are constrained to zero on edges
/// of a given tag. Dirichlet node sets are unions over tagged edges, so a
/// corner shared by two tags gets the union of both masks.
struct DirichletPolicy {
    std::array<ComponentMask, 7> by_tag{};

    ComponentMask mask(BoundaryTag tag) const { return by_tag[static_cast<int>(tag)]; }
    DirichletPolicy& set(BoundaryTag tag, ComponentMask m) {
        by_tag[static_cast<int>(tag)] = m;
        return *this;
    }

    /// Benchmark fluid: symmetry wall constrains the y component only;
    /// inlet/outlet are natural (traction) boundaries.
    static DirichletPolicy channel_fluid();
    /// Benchmark solid: lateral edges clamped, top traction-free.
    static DirichletPolicy channel_solid();
    /// Homogeneous Dirichlet on every non-interface tag (analysis setting).
    static DirichletPolicy clamp_all();
};

/// Vector-valued P1 dof numbering (dof = 2*vertex + component) with the
/// constrained set and the free-dof compression maps.
struct VectorDofMap {
    int n_vertices = 0;
    std::vector<std::uint8_t> constrained;  // per dof
    std::vector<int> free_dofs;             // ascending full indices
    std::vector<int> full_to_free;          // -1 on constrained dofs

    int n_dofs() const { return 2 * n_vertices; }
    int n_free() const { return static_cast<int>(free_dofs.size()); }

    std::vector<double> restrict_free(std::span<const double> full) const;
    std::vector<double> scatter_free(std::span<const double> reduced) const;
};

VectorDofMap make_vector_dofmap(const Mesh& mesh, const DirichletPolicy& policy);

/// Interface trace machinery shared by both subdomains: the trace-space
/// mass matrix on the interface and the maps from trace dofs (2*node +
/// component, in InterfaceMap order) to fluid/solid area dofs. Both sides
/// share the identical local matrices, which is what makes the residual
/// lifting and the pointwise multiplier update equivalent.
struct TraceOps {
    std::vector<int> fluid_dofs;
    std::vector<int> solid_dofs;
    SparseMatrix mass;  // vector trace mass M_sigma

    int n_trace() const { return static_cast<int>(fluid_dofs.size()); }
    std::vector<double> restrict_fluid(std::span<const double> u_full) const;
    std::vector<double> restrict_solid(std::span<const double> q_full) const;
    /// area_load += scale * scatter^T(M_sigma * w)  on the requested side
    void add_interface_load(std::span<const double> w_trace, std::span<double> area_load,
                            bool solid_side, double scale = 1.0) const;
    double norm_sq(std::span<const double> w_trace) const { return mass.quad(w_trace, w_trace); }
};

TraceOps assemble_interface_mass(const InterfaceMap& imap);

/// Full-Galerkin fluid operators (no Dirichlet elimination; the schemes
/// reduce to free dofs when forming their systems).
struct FluidOperators {
    SparseMatrix M;     // vector mass
    SparseMatrix A_mu;  // 2 mu (eps(u), eps(v))
    SparseMatrix G;     // G[i,j] = (psi_j, div phi_i), momentum couples -G p
    SparseMatrix L_p;   // scalar pressure Laplacian, unscaled
    SparseMatrix B;     // interface vector mass on fluid dofs
    std::vector<double> inlet_unit_load;    // traction load for p_in = 1
    std::vector<double> pressure_integral;  // (psi_i, 1), for the mean constraint
};

struct SolidOperators {
    SparseMatrix M;  // vector mass; also the mass of the c0 term
    SparseMatrix K;  // 2 L1 (eps,eps) + L2 (div,div)
    SparseMatrix B;  // interface vector mass on solid dofs

    const SparseMatrix& M0() const { return M; }
};

SolidOperators assemble_solid(const Mesh& mesh, const PhysicalParams& prm);
FluidOperators assemble_fluid(const Mesh& mesh, const PhysicalParams& prm);

/// Interface vector mass expanded to area dofs of one side: R^T M_sigma R.
SparseMatrix interface_vector_mass(const TraceOps& trace, bool solid_side, int n_dofs);

/// Inlet traction load for pressure datum p_in (sigma n = -p_in n weakly).
std::vector<double> inlet_traction_load(const FluidOperators& ops, double p_in);

/// Variationally consistent interface traction: solves
///   M_sigma lambda = R_f [ (rho_f/dt) M (u_new - u_old) + A_mu u_new - G p_new
///                          - p_in T_in ],
/// i.e. the fluid momentum residual tested with discrete liftings of the
/// trace basis functions (which are supported on the interface layer). The
/// inlet datum enters because the lifting of the interface endpoint basis
/// function overlaps the inlet edge; without that term the result would
/// differ from the pointwise multiplier update at the corner node whenever
/// the inlet is loaded.
std::vector<double> lift_residual_stress(const FluidOperators& ops, const TraceOps& trace,
                                         double rho_f, double dt,
                                         std::span<const double> u_new,
                                         std::span<const double> p_new,
                                         std::span<const double> u_old, double p_in = 0.0);

/// Everything the time-stepping schemes need, assembled once.
struct CoupledProblem {
    Mesh fluid_mesh;
    Mesh solid_mesh;
    InterfaceMap imap;
    PhysicalParams prm;
    VectorDofMap fluid_dofs;
    VectorDofMap solid_dofs;
    FluidOperators fluid;
    SolidOperators solid;
    TraceOps trace;
    double h = 0.0;  // global fluid mesh size used by the stabilization

    int n_pressure() const { return fluid_mesh.n_vertices(); }
    CoupledState zero_state() const;

    static CoupledProblem build(const ChannelPair& geo, const PhysicalParams& prm,
                                const DirichletPolicy& fluid_policy,
                                const DirichletPolicy& solid_policy);
    static CoupledProblem build(const ChannelPair& geo, const PhysicalParams& prm);
};

/// Load vector (f, phi_i) by mid-edge quadrature (exact through degree 2).
std::vector<double> assemble_body_load(const Mesh& mesh,
                                       const std::function<Vec2(Vec2)>& f);

struct StokesSolution {
    std::vector<double> u;
    std::vector<double> p;
};

/// Steady pressure-stabilized Stokes solve. With pin_pressure_mean a single
/// zero-mean constraint row is appended (required for pure-Dirichlet
/// velocity data, where the pressure is otherwise defined up to a constant).
StokesSolution solve_stabilized_stokes(const Mesh& mesh, const VectorDofMap& dofs,
                                       const FluidOperators& ops, double beta_p, double h,
                                       std::span<const double> f_load, bool pin_pressure_mean);

}  // namespace fsi
