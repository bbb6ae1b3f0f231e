#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fsi/energy.hpp"
#include "fsi/harness.hpp"
#include "fsi/stepping.hpp"

using namespace fsi;

namespace {

RunConfig strip_config(int nx, double dt, double alpha) {
    RunConfig cfg = benchmark_config();
    cfg.nx = nx;
    cfg.ny_f = std::max(1, nx / 12);
    cfg.ny_s = std::max(1, nx / 60);
    cfg.dt = dt;
    cfg.T = 50 * dt;
    cfg.params.alpha = alpha;
    cfg.inlet_amplitude = 0.0;
    cfg.snapshot_times.clear();
    return cfg;
}

}  // namespace

TEST_CASE("energy snapshot of simple states") {
    RunConfig cfg = strip_config(8, 1e-3, 500.0);
    auto pb = build_problem(cfg);
    const EnergyAccountant acc(pb, cfg.dt);

    CHECK(acc.snapshot(pb->zero_state()) == 0.0);

    // pure displacement: S = eta^T (K + c0 M) eta
    CoupledState s = pb->zero_state();
    for (int d : pb->solid_dofs.free_dofs) s.eta[d] = 0.5;
    const double expected = pb->solid.K.quad(s.eta, s.eta) +
                            cfg.params.c0 * pb->solid.M0().quad(s.eta, s.eta);
    CHECK(acc.snapshot(s) == doctest::Approx(expected).epsilon(1e-14));

    // single solid velocity dof: rho_s M_jj
    CoupledState sq = pb->zero_state();
    const int j = pb->solid_dofs.free_dofs[5];
    sq.q[j] = 1.0;
    std::vector<double> ej(sq.q.size(), 0.0);
    ej[j] = 1.0;
    CHECK(acc.snapshot(sq) ==
          doctest::Approx(cfg.params.rho_s * pb->solid.M.quad(ej, ej)).epsilon(1e-14));
}

TEST_CASE("ledger of an all-zero run has zero residual") {
    RunConfig cfg = strip_config(6, 1e-3, 500.0);
    auto pb = build_problem(cfg);
    const RobinScheme scheme(pb, cfg.dt);
    const EnergyAccountant acc(pb, cfg.dt);

    EnergyLedger ledger;
    CoupledState s = pb->zero_state();
    ledger.start(0.0, acc.snapshot(s));
    for (int n = 0; n < 5; ++n) {
        const CoupledState next = scheme.advance(s, 0.0, 0);
        ledger.push(next.t, acc.snapshot(next), acc.dissipation(s, next).total());
        s = next;
    }
    const IdentityCheck c = check_energy_identity(ledger, 1e-9);
    CHECK(c.pass);
    CHECK(c.max_rel_residual == 0.0);
}

TEST_CASE("discrete energy identity holds to 1e-9 on random data") {
    // nx=12 strip, random nonzero initial (q, u, eta), 50 steps
    const IdentityCheck c500 = run_energy_identity(strip_config(12, 1e-3, 500.0), 50, 42u);
    CHECK(c500.pass);
    CHECK(c500.max_rel_residual <= 1e-9);

    // alpha-independence of the identity
    const IdentityCheck c5 = run_energy_identity(strip_config(12, 1e-3, 5.0), 50, 42u);
    CHECK(c5.pass);
}

TEST_CASE("dissipation terms are nonnegative and energy decays monotonically") {
    RunConfig cfg = strip_config(12, 1e-3, 500.0);
    auto pb = build_problem(cfg);
    const RobinScheme scheme(pb, cfg.dt);
    const EnergyAccountant acc(pb, cfg.dt);

    CoupledState s = random_state(*pb, 7u);
    double prev_S = acc.snapshot(s);
    const double S0 = prev_S;
    for (int n = 0; n < 50; ++n) {
        const CoupledState next = scheme.advance(s, 0.0, 0);
        const EnergyBreakdown d = acc.dissipation(s, next);
        CHECK(d.fluid_increment >= 0.0);
        CHECK(d.viscous >= 0.0);
        CHECK(d.stabilization >= 0.0);
        CHECK(d.interface >= 0.0);
        const double S = acc.snapshot(next);
        CHECK(S <= prev_S * (1.0 + 1e-12));
        CHECK(S <= S0 * (1.0 + 1e-12));
        prev_S = S;
        s = next;
    }
}

TEST_CASE("ledger residuals are invariant under restart") {
    RunConfig cfg = strip_config(6, 1e-3, 500.0);
    auto pb = build_problem(cfg);
    const RobinScheme scheme(pb, cfg.dt);
    const EnergyAccountant acc(pb, cfg.dt);

    std::vector<CoupledState> states{random_state(*pb, 21u)};
    for (int n = 0; n < 20; ++n) states.push_back(scheme.advance(states.back(), 0.0, 0));

    // rerun from level 10: bitwise identical states, hence identical increments
    CoupledState s = states[10];
    for (int n = 10; n < 20; ++n) {
        const CoupledState next = scheme.advance(s, 0.0, 0);
        CHECK(next.u == states[n + 1].u);
        CHECK(next.lambda == states[n + 1].lambda);
        const double d_orig = acc.dissipation(states[n], states[n + 1]).total();
        const double d_restart = acc.dissipation(s, next).total();
        CHECK(d_orig == d_restart);
        s = next;
    }
}

TEST_CASE("elastic error basics") {
    RunConfig cfg = strip_config(6, 1e-3, 500.0);
    auto pb = build_problem(cfg);
    std::vector<double> ref(pb->solid_dofs.n_dofs(), 0.0);
    for (int d : pb->solid_dofs.free_dofs) ref[d] = 0.3 * d;

    CHECK(elastic_error(ref, ref, pb->solid.K) == 0.0);

    std::vector<double> twice(ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) twice[i] = 2.0 * ref[i];
    CHECK(elastic_error(ref, twice, pb->solid.K) == doctest::Approx(1.0).epsilon(1e-13));

    const std::vector<double> zero(ref.size(), 0.0);
    CHECK_THROWS_AS(elastic_error(zero, ref, pb->solid.K), std::invalid_argument);
}

TEST_CASE("P1 prolongation of a linear field is exact") {
    const Rect rect{0.0, 6.0, 0.5, 0.6};
    const Mesh coarse = build_rect_mesh(rect, 6, 1);
    const Mesh fine = build_rect_mesh(rect, 24, 4);

    std::vector<double> vals(coarse.n_vertices());
    for (int v = 0; v < coarse.n_vertices(); ++v)
        vals[v] = 2.0 * coarse.vertices[v].x - 5.0 * coarse.vertices[v].y + 1.0;
    for (int v = 0; v < fine.n_vertices(); ++v) {
        const Vec2 p = fine.vertices[v];
        const double interp = eval_p1_structured(rect, 6, 1, vals, p);
        CHECK(interp == doctest::Approx(2.0 * p.x - 5.0 * p.y + 1.0).epsilon(1e-12));
    }
}

TEST_CASE("convergence table") {
    const std::vector<double> simple{4.0, 2.0, 1.0};
    const std::vector<double> r1 = convergence_table(simple);
    CHECK(r1[0] == doctest::Approx(1.0));
    CHECK(r1[1] == doctest::Approx(1.0));

    const std::vector<double> half{1.0, 1.0 / std::sqrt(2.0), 0.5};
    const std::vector<double> r2 = convergence_table(half);
    CHECK(r2[0] == doctest::Approx(0.5));
    CHECK(r2[1] == doctest::Approx(0.5));

    CHECK_THROWS_AS(convergence_table(std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_table(std::vector<double>{1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_table(std::vector<double>{-1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("benchmark-geometry identity run at nx=24 with zero amplitude") {
    RunConfig cfg = strip_config(24, 5e-4, 500.0);
    EnergyLedger ledger;
    const IdentityCheck c = run_energy_identity(cfg, 30, 9u, 1e-9, &ledger);
    CHECK(c.pass);
    CHECK(ledger.levels() == 31);
}
