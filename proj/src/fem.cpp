#include "fsi/fem.hpp"

#include <cmath>
#include <stdexcept>

#include "fsi/solvers.hpp"

namespace fsi {

void PhysicalParams::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("PhysicalParams: ") + what);
    };
    require(rho_f > 0.0, "rho_f must be > 0");
    require(rho_s > 0.0, "rho_s must be > 0");
    require(mu > 0.0, "mu must be > 0");
    require(L1 > 0.0, "L1 must be > 0");
    require(L2 >= 0.0, "L2 must be >= 0");
    require(c0 >= 0.0, "c0 must be >= 0");
    require(alpha > 0.0, "alpha must be > 0");
    require(beta_p > 0.0, "beta_p must be > 0");
}

DirichletPolicy DirichletPolicy::channel_fluid() {
    DirichletPolicy p;
    p.set(BoundaryTag::Symmetry, ComponentMask::Y);
    p.set(BoundaryTag::FluidDirichlet, ComponentMask::Both);
    return p;
}

DirichletPolicy DirichletPolicy::channel_solid() {
    DirichletPolicy p;
    p.set(BoundaryTag::SolidDirichlet, ComponentMask::Both);
    return p;
}

DirichletPolicy DirichletPolicy::clamp_all() {
    DirichletPolicy p;
    for (int t = 0; t < 7; ++t)
        if (static_cast<BoundaryTag>(t) != BoundaryTag::Interface)
            p.by_tag[t] = ComponentMask::Both;
    return p;
}

VectorDofMap make_vector_dofmap(const Mesh& mesh, const DirichletPolicy& policy) {
    VectorDofMap dm;
    dm.n_vertices = mesh.n_vertices();
    dm.constrained.assign(dm.n_dofs(), 0);
    for (const BoundaryEdge& e : mesh.boundary_edges) {
        const auto m = static_cast<unsigned>(policy.mask(e.tag));
        if (m == 0) continue;
        for (int v : {e.a, e.b}) {
            if (m & static_cast<unsigned>(ComponentMask::X)) dm.constrained[2 * v] = 1;
            if (m & static_cast<unsigned>(ComponentMask::Y)) dm.constrained[2 * v + 1] = 1;
        }
    }
    dm.full_to_free.assign(dm.n_dofs(), -1);
    for (int d = 0; d < dm.n_dofs(); ++d) {
        if (!dm.constrained[d]) {
            dm.full_to_free[d] = static_cast<int>(dm.free_dofs.size());
            dm.free_dofs.push_back(d);
        }
    }
    return dm;
}

std::vector<double> VectorDofMap::restrict_free(std::span<const double> full) const {
    std::vector<double> r(free_dofs.size());
    for (std::size_t i = 0; i < free_dofs.size(); ++i) r[i] = full[free_dofs[i]];
    return r;
}

std::vector<double> VectorDofMap::scatter_free(std::span<const double> reduced) const {
    std::vector<double> full(n_dofs(), 0.0);
    for (std::size_t i = 0; i < free_dofs.size(); ++i) full[free_dofs[i]] = reduced[i];
    return full;
}

namespace {

struct TriGeom {
    double area;
    std::array<std::array<double, 2>, 3> grad;  // P1 basis gradients
};

TriGeom tri_geometry(const Mesh& mesh, const std::array<int, 3>& tri) {
    const Vec2 p0 = mesh.vertices[tri[0]];
    const Vec2 p1 = mesh.vertices[tri[1]];
    const Vec2 p2 = mesh.vertices[tri[2]];
    const double area2 = cross(p1 - p0, p2 - p0);
    if (!(area2 > 0.0)) throw std::domain_error("assemble: degenerate or inverted triangle");
    TriGeom g;
    g.area = 0.5 * area2;
    const Vec2 e0 = p2 - p1, e1 = p0 - p2, e2 = p1 - p0;
    g.grad[0] = {-e0.y / area2, e0.x / area2};
    g.grad[1] = {-e1.y / area2, e1.x / area2};
    g.grad[2] = {-e2.y / area2, e2.x / area2};
    return g;
}

void add_vector_mass(Triplets& out, const TriGeom& g, const std::array<int, 3>& tri,
                     double coeff) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double v = coeff * g.area / 12.0 * (i == j ? 2.0 : 1.0);
            for (int c = 0; c < 2; ++c) out.add(2 * tri[i] + c, 2 * tri[j] + c, v);
        }
}

// coeff1*(eps(u),eps(v)) pair term + coeff2*(div u)(div v)
void add_elastic(Triplets& out, const TriGeom& g, const std::array<int, 3>& tri, double coeff1,
                 double coeff2) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const auto& gi = g.grad[i];
            const auto& gj = g.grad[j];
            const double gij = gi[0] * gj[0] + gi[1] * gj[1];
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    double v = coeff1 * (gi[d] * gj[c] + (c == d ? gij : 0.0));
                    v += coeff2 * gi[c] * gj[d];
                    out.add(2 * tri[i] + c, 2 * tri[j] + d, g.area * v);
                }
        }
}

}  // namespace

SolidOperators assemble_solid(const Mesh& mesh, const PhysicalParams& prm) {
    const int nv = mesh.n_vertices();
    Triplets mt(2 * nv, 2 * nv), kt(2 * nv, 2 * nv);
    mt.reserve(mesh.triangles.size() * 18);
    kt.reserve(mesh.triangles.size() * 36);
    for (const auto& tri : mesh.triangles) {
        const TriGeom g = tri_geometry(mesh, tri);
        add_vector_mass(mt, g, tri, 1.0);
        add_elastic(kt, g, tri, prm.L1, prm.L2);
    }
    SolidOperators ops;
    ops.M = from_triplets(mt);
    ops.K = from_triplets(kt);
    return ops;
}

FluidOperators assemble_fluid(const Mesh& mesh, const PhysicalParams& prm) {
    const int nv = mesh.n_vertices();
    Triplets mt(2 * nv, 2 * nv), at(2 * nv, 2 * nv), gt(2 * nv, nv), lt(nv, nv);
    FluidOperators ops;
    ops.pressure_integral.assign(nv, 0.0);
    for (const auto& tri : mesh.triangles) {
        const TriGeom g = tri_geometry(mesh, tri);
        add_vector_mass(mt, g, tri, 1.0);
        add_elastic(at, g, tri, prm.mu, 0.0);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                // (psi_j, div(phi_i e_c)) with constant gradients
                for (int c = 0; c < 2; ++c)
                    gt.add(2 * tri[i] + c, tri[j], g.grad[i][c] * g.area / 3.0);
                const auto& gi = g.grad[i];
                const auto& gj = g.grad[j];
                lt.add(tri[i], tri[j], g.area * (gi[0] * gj[0] + gi[1] * gj[1]));
            }
            ops.pressure_integral[tri[i]] += g.area / 3.0;
        }
    }
    ops.M = from_triplets(mt);
    ops.A_mu = from_triplets(at);
    ops.G = from_triplets(gt);
    ops.L_p = from_triplets(lt);

    // Weak traction datum sigma n = -p_in n on the inlet; unit load for p_in=1.
    ops.inlet_unit_load.assign(2 * nv, 0.0);
    for (const BoundaryEdge& e : mesh.boundary_edges) {
        if (e.tag != BoundaryTag::Inlet) continue;
        const Vec2 d = mesh.vertices[e.b] - mesh.vertices[e.a];
        const double len = std::sqrt(dot(d, d));
        const Vec2 n{d.y / len, -d.x / len};
        for (int v : {e.a, e.b}) {
            ops.inlet_unit_load[2 * v] += -n.x * len / 2.0;
            ops.inlet_unit_load[2 * v + 1] += -n.y * len / 2.0;
        }
    }
    return ops;
}

TraceOps assemble_interface_mass(const InterfaceMap& imap) {
    if (imap.n_edges() == 0) throw std::invalid_argument("assemble_interface_mass: empty interface");
    TraceOps tr;
    const int n = imap.n_nodes();
    tr.fluid_dofs.resize(2 * n);
    tr.solid_dofs.resize(2 * n);
    for (int k = 0; k < n; ++k)
        for (int c = 0; c < 2; ++c) {
            tr.fluid_dofs[2 * k + c] = 2 * imap.fluid_nodes[k] + c;
            tr.solid_dofs[2 * k + c] = 2 * imap.solid_nodes[k] + c;
        }
    Triplets mt(2 * n, 2 * n);
    for (int k = 0; k < imap.n_edges(); ++k) {
        const double l = imap.edge_lengths[k];
        for (int c = 0; c < 2; ++c) {
            mt.add(2 * k + c, 2 * k + c, l / 3.0);
            mt.add(2 * (k + 1) + c, 2 * (k + 1) + c, l / 3.0);
            mt.add(2 * k + c, 2 * (k + 1) + c, l / 6.0);
            mt.add(2 * (k + 1) + c, 2 * k + c, l / 6.0);
        }
    }
    tr.mass = from_triplets(mt);
    return tr;
}

std::vector<double> TraceOps::restrict_fluid(std::span<const double> u_full) const {
    std::vector<double> w(fluid_dofs.size());
    for (std::size_t a = 0; a < fluid_dofs.size(); ++a) w[a] = u_full[fluid_dofs[a]];
    return w;
}

std::vector<double> TraceOps::restrict_solid(std::span<const double> q_full) const {
    std::vector<double> w(solid_dofs.size());
    for (std::size_t a = 0; a < solid_dofs.size(); ++a) w[a] = q_full[solid_dofs[a]];
    return w;
}

void TraceOps::add_interface_load(std::span<const double> w_trace, std::span<double> area_load,
                                  bool solid_side, double scale) const {
    const std::vector<double> mw = mass.apply(w_trace);
    const auto& dofs = solid_side ? solid_dofs : fluid_dofs;
    for (std::size_t a = 0; a < dofs.size(); ++a) area_load[dofs[a]] += scale * mw[a];
}

SparseMatrix interface_vector_mass(const TraceOps& trace, bool solid_side, int n_dofs) {
    const auto& dofs = solid_side ? trace.solid_dofs : trace.fluid_dofs;
    Triplets t(n_dofs, n_dofs);
    const auto off = trace.mass.row_offsets();
    const auto cols = trace.mass.col_indices();
    const auto vals = trace.mass.values();
    for (int a = 0; a < trace.mass.rows(); ++a)
        for (int k = off[a]; k < off[a + 1]; ++k) t.add(dofs[a], dofs[cols[k]], vals[k]);
    return from_triplets(t);
}

std::vector<double> inlet_traction_load(const FluidOperators& ops, double p_in) {
    std::vector<double> load(ops.inlet_unit_load.size());
    for (std::size_t i = 0; i < load.size(); ++i) load[i] = p_in * ops.inlet_unit_load[i];
    return load;
}

std::vector<double> lift_residual_stress(const FluidOperators& ops, const TraceOps& trace,
                                         double rho_f, double dt, std::span<const double> u_new,
                                         std::span<const double> p_new,
                                         std::span<const double> u_old, double p_in) {
    std::vector<double> res(u_new.size(), 0.0);
    std::vector<double> du(u_new.size());
    for (std::size_t i = 0; i < du.size(); ++i) du[i] = u_new[i] - u_old[i];
    ops.M.apply_add(du, res, rho_f / dt);
    ops.A_mu.apply_add(u_new, res, 1.0);
    ops.G.apply_add(p_new, res, -1.0);
    if (p_in != 0.0) axpy(-p_in, ops.inlet_unit_load, res);

    std::vector<double> rhs(trace.n_trace());
    for (int a = 0; a < trace.n_trace(); ++a) rhs[a] = res[trace.fluid_dofs[a]];
    return solve_spd(trace.mass, rhs);
}

CoupledState CoupledProblem::zero_state() const {
    CoupledState s;
    s.u.assign(fluid_dofs.n_dofs(), 0.0);
    s.p.assign(n_pressure(), 0.0);
    s.q.assign(solid_dofs.n_dofs(), 0.0);
    s.eta.assign(solid_dofs.n_dofs(), 0.0);
    s.lambda.assign(trace.n_trace(), 0.0);
    return s;
}

CoupledProblem CoupledProblem::build(const ChannelPair& geo, const PhysicalParams& prm,
                                     const DirichletPolicy& fluid_policy,
                                     const DirichletPolicy& solid_policy) {
    CoupledProblem p;
    p.fluid_mesh = geo.fluid;
    p.solid_mesh = geo.solid;
    p.imap = geo.interface;
    p.prm = prm;
    p.fluid_dofs = make_vector_dofmap(p.fluid_mesh, fluid_policy);
    p.solid_dofs = make_vector_dofmap(p.solid_mesh, solid_policy);
    p.fluid = assemble_fluid(p.fluid_mesh, prm);
    p.solid = assemble_solid(p.solid_mesh, prm);
    p.trace = assemble_interface_mass(p.imap);
    p.fluid.B = interface_vector_mass(p.trace, false, p.fluid_dofs.n_dofs());
    p.solid.B = interface_vector_mass(p.trace, true, p.solid_dofs.n_dofs());
    p.h = p.fluid_mesh.h;
    return p;
}

CoupledProblem CoupledProblem::build(const ChannelPair& geo, const PhysicalParams& prm) {
    return build(geo, prm, DirichletPolicy::channel_fluid(), DirichletPolicy::channel_solid());
}

std::vector<double> assemble_body_load(const Mesh& mesh, const std::function<Vec2(Vec2)>& f) {
    std::vector<double> load(2 * mesh.n_vertices(), 0.0);
    for (const auto& tri : mesh.triangles) {
        const TriGeom g = tri_geometry(mesh, tri);
        const Vec2 p0 = mesh.vertices[tri[0]];
        const Vec2 p1 = mesh.vertices[tri[1]];
        const Vec2 p2 = mesh.vertices[tri[2]];
        const Vec2 m01 = 0.5 * (p0 + p1), m12 = 0.5 * (p1 + p2), m20 = 0.5 * (p2 + p0);
        const Vec2 f01 = f(m01), f12 = f(m12), f20 = f(m20);
        // phi_i is 1/2 at the two midpoints of edges containing vertex i
        const Vec2 fv[3] = {0.5 * (f01 + f20), 0.5 * (f01 + f12), 0.5 * (f12 + f20)};
        for (int i = 0; i < 3; ++i) {
            load[2 * tri[i]] += g.area / 3.0 * fv[i].x;
            load[2 * tri[i] + 1] += g.area / 3.0 * fv[i].y;
        }
    }
    return load;
}

StokesSolution solve_stabilized_stokes(const Mesh& mesh, const VectorDofMap& dofs,
                                       const FluidOperators& ops, double beta_p, double h,
                                       std::span<const double> f_load, bool pin_pressure_mean) {
    const int nu = dofs.n_free();
    const int np = mesh.n_vertices();
    const int n = nu + np + (pin_pressure_mean ? 1 : 0);

    std::vector<int> identity(np);
    for (int i = 0; i < np; ++i) identity[i] = i;

    const SparseMatrix A = ops.A_mu.restricted(dofs.full_to_free, nu, dofs.full_to_free, nu);
    const SparseMatrix G = ops.G.restricted(dofs.full_to_free, nu, identity, np);

    Triplets t(n, n);
    accumulate(t, A, 1.0, 0, 0);
    accumulate(t, G, -1.0, 0, nu);
    accumulate(t, G.transposed(), -1.0, nu, 0);
    accumulate(t, ops.L_p, -beta_p * h * h, nu, nu);
    if (pin_pressure_mean) {
        for (int i = 0; i < np; ++i) {
            t.add(nu + i, nu + np, -ops.pressure_integral[i]);
            t.add(nu + np, nu + i, -ops.pressure_integral[i]);
        }
    }

    std::vector<double> rhs(n, 0.0);
    const std::vector<double> fr = dofs.restrict_free(f_load);
    for (int i = 0; i < nu; ++i) rhs[i] = fr[i];

    const std::vector<double> x = solve_general(from_triplets(t), rhs);
    StokesSolution sol;
    sol.u = dofs.scatter_free(std::span(x).subspan(0, nu));
    sol.p.assign(x.begin() + nu, x.begin() + nu + np);
    return sol;
}

}  // namespace fsi
