#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "fsi/harness.hpp"
#include "fsi/stepping.hpp"
#include "oracles.hpp"

using namespace fsi;

namespace {

std::shared_ptr<const CoupledProblem> channel_problem(int nx, int ny_f, int ny_s,
                                                      double alpha = 500.0) {
    RunConfig cfg = benchmark_config();
    cfg.nx = nx;
    cfg.ny_f = ny_f;
    cfg.ny_s = ny_s;
    cfg.params.alpha = alpha;
    const ChannelPair geo = build_channel_pair(cfg.L, cfg.R, cfg.eps, nx, ny_f, ny_s);
    return std::make_shared<CoupledProblem>(CoupledProblem::build(geo, cfg.params));
}

}  // namespace

TEST_CASE("zero data stays zero through both substeps") {
    auto pb = channel_problem(8, 2, 1);
    const RobinScheme scheme(pb, 1e-3);
    const CoupledState s = pb->zero_state();
    const std::vector<double> zero_trace(pb->trace.n_trace(), 0.0);

    const auto solid = scheme.solid_step(s, zero_trace, zero_trace);
    for (double v : solid.q) CHECK(v == 0.0);
    for (double v : solid.eta) CHECK(v == 0.0);

    const auto fluid = scheme.fluid_step(s, zero_trace, zero_trace, 0.0);
    for (double v : fluid.u) CHECK(v == 0.0);
    for (double v : fluid.p) CHECK(v == 0.0);

    const CoupledState next = scheme.advance(s, 0.0, 0);
    for (double v : next.u) CHECK(v == 0.0);
    for (double v : next.lambda) CHECK(v == 0.0);
    CHECK(next.t == doctest::Approx(1e-3));
}

TEST_CASE("solid step system is SPD (dense eigencheck at nx=4)") {
    auto pb = channel_problem(4, 1, 1);
    const RobinScheme scheme(pb, 5e-4);
    const oracles::Dense S = oracles::to_dense(scheme.solid_system());
    const int n = static_cast<int>(S.size());
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = S[i][j];
    CHECK((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * M.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("free solid oscillation conserves the midpoint energy") {
    // alpha = 0 and no interface data: pure clamped elastodynamics, whose
    // midpoint discretization conserves ||eta||_S'^2 + rho_s ||q||^2 exactly.
    RunConfig cfg = benchmark_config();
    const ChannelPair geo = build_channel_pair(cfg.L, cfg.R, cfg.eps, 12, 1, 1);
    PhysicalParams prm = cfg.params;
    prm.alpha = 0.0;
    auto pb = std::make_shared<const CoupledProblem>(CoupledProblem::build(geo, prm));
    const RobinScheme scheme(pb, 1e-4);

    CoupledState s = pb->zero_state();
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int d : pb->solid_dofs.free_dofs) s.q[d] = dist(gen);
    for (int d : pb->solid_dofs.free_dofs) s.eta[d] = 1e-3 * dist(gen);

    auto energy = [&](const CoupledState& st) {
        return pb->solid.K.quad(st.eta, st.eta) + prm.c0 * pb->solid.M0().quad(st.eta, st.eta) +
               prm.rho_s * pb->solid.M.quad(st.q, st.q);
    };
    const double e0 = energy(s);
    const std::vector<double> zero_trace(pb->trace.n_trace(), 0.0);
    for (int n = 0; n < 100; ++n) {
        const auto r = scheme.solid_step(s, zero_trace, zero_trace);
        s.q = r.q;
        s.eta = r.eta;
        CHECK(std::abs(energy(s) - e0) <= 1e-12 * e0);
    }
}

TEST_CASE("fluid step satisfies the stabilized mass balance") {
    auto pb = channel_problem(12, 2, 1);
    const double dt = 2.5e-4;
    const RobinScheme scheme(pb, dt);

    CoupledState s = pb->zero_state();
    std::mt19937 gen(17);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int d : pb->fluid_dofs.free_dofs) s.u[d] = dist(gen);
    std::vector<double> q_half(pb->trace.n_trace()), lam(pb->trace.n_trace());
    for (double& v : q_half) v = dist(gen);
    for (double& v : lam) v = dist(gen);

    const auto r = scheme.fluid_step(s, q_half, lam, 1.0);

    // (div u, theta) + beta_p h^2 (grad p, grad theta) = 0 for every theta
    std::vector<double> res = pb->fluid.G.transposed().apply(r.u);
    pb->fluid.L_p.apply_add(r.p, res, pb->prm.beta_p * pb->h * pb->h);
    const double scale = std::max(norm2(r.u), 1.0);
    for (double v : res) CHECK(std::abs(v) <= 1e-12 * scale);
}

TEST_CASE("multiplier update arithmetic") {
    const std::vector<double> lam{1.0, -2.0};
    const std::vector<double> q{0.5, 0.25};

    // fixed point: traces agree
    const std::vector<double> same = multiplier_update_pointwise(lam, q, q, 500.0);
    CHECK(same == lam);

    // alpha = 500, q - u = (0, 1e-3) at a node -> increment (0, 0.5)
    const std::vector<double> u{0.5, 0.25 - 1e-3};
    const std::vector<double> zero{0.0, 0.0};
    const std::vector<double> upd = multiplier_update_pointwise(zero, q, u, 500.0);
    CHECK(upd[0] == doctest::Approx(0.0));
    CHECK(upd[1] == doctest::Approx(0.5));
}

TEST_CASE("advance with no corrections composes the three substeps verbatim") {
    auto pb = channel_problem(6, 1, 1);
    const double dt = 5e-4;
    const RobinScheme scheme(pb, dt);
    CoupledState s = random_state(*pb, 11);

    const CoupledState next = scheme.advance(s, 123.0, 0);

    const std::vector<double> u_trace = pb->trace.restrict_fluid(s.u);
    const auto solid = scheme.solid_step(s, u_trace, s.lambda);
    std::vector<double> q_half(solid.q.size());
    for (std::size_t i = 0; i < q_half.size(); ++i) q_half[i] = 0.5 * (solid.q[i] + s.q[i]);
    const std::vector<double> q_half_trace = pb->trace.restrict_solid(q_half);
    const auto fluid = scheme.fluid_step(s, q_half_trace, s.lambda, 123.0);
    const std::vector<double> lam = multiplier_update_pointwise(
        s.lambda, q_half_trace, pb->trace.restrict_fluid(fluid.u), pb->prm.alpha);

    CHECK(next.q == solid.q);  // bitwise
    CHECK(next.eta == solid.eta);
    CHECK(next.u == fluid.u);
    CHECK(next.p == fluid.p);
    CHECK(next.lambda == lam);
}

TEST_CASE("loose coupling is sequentially causal") {
    // Feeding the post-update multiplier into the fluid step (a deliberately
    // wrong strongly coupled ordering) must change the answer.
    auto pb = channel_problem(6, 1, 1);
    const RobinScheme scheme(pb, 5e-4);
    CoupledState s = random_state(*pb, 13);

    const CoupledState next = scheme.advance(s, 0.0, 0);
    const std::vector<double> q_half_trace = [&] {
        std::vector<double> qh(next.q.size());
        for (std::size_t i = 0; i < qh.size(); ++i) qh[i] = 0.5 * (next.q[i] + s.q[i]);
        return pb->trace.restrict_solid(qh);
    }();
    const auto wrong = scheme.fluid_step(s, q_half_trace, next.lambda, 0.0);

    double diff = 0.0;
    for (std::size_t i = 0; i < wrong.u.size(); ++i)
        diff = std::max(diff, std::abs(wrong.u[i] - next.u[i]));
    CHECK(diff > 1e-8 * std::max(1.0, norm2(next.u)));
}

TEST_CASE("alpha must be positive and small perturbations act continuously") {
    RunConfig cfg = benchmark_config();
    const ChannelPair geo = build_channel_pair(cfg.L, cfg.R, cfg.eps, 6, 1, 1);
    PhysicalParams bad = cfg.params;
    bad.alpha = 0.0;
    auto pb_bad = std::make_shared<const CoupledProblem>(CoupledProblem::build(geo, bad));
    const RobinScheme s_bad(pb_bad, 5e-4);
    CHECK_THROWS_AS(s_bad.advance(pb_bad->zero_state(), 0.0, 0), std::invalid_argument);

    auto run_two_steps = [&](double alpha) {
        PhysicalParams prm = cfg.params;
        prm.alpha = alpha;
        auto pb = std::make_shared<const CoupledProblem>(CoupledProblem::build(geo, prm));
        const RobinScheme sc(pb, 5e-4);
        CoupledState st = pb->zero_state();
        st = sc.advance(st, inlet_pressure(5e-4, 2e4, 5e-3), 0);
        st = sc.advance(st, inlet_pressure(1e-3, 2e4, 5e-3), 0);
        return st;
    };
    const CoupledState a = run_two_steps(500.0);
    const CoupledState b = run_two_steps(500.0 * 1.0001);
    double rel = 0.0;
    const double scale = norm2(a.u);
    for (std::size_t i = 0; i < a.u.size(); ++i) rel = std::max(rel, std::abs(a.u[i] - b.u[i]));
    CHECK(rel <= 1e-2 * scale);
}

TEST_CASE("run_time_loop echoes the initial state for zero steps") {
    auto pb = channel_problem(6, 1, 1);
    const RobinScheme scheme(pb, 1e-3);
    const CoupledState init = random_state(*pb, 5);
    const StepFn step = [&](const CoupledState& s, double p) { return scheme.advance(s, p, 0); };
    RunOptions opts;
    opts.snapshot_steps = {0};
    const RunResult res = run_time_loop(step, init, {1e-3, 0}, [](double) { return 0.0; }, opts);
    CHECK(res.final_state.u == init.u);
    CHECK(res.final_state.eta == init.eta);
    REQUIRE(res.snapshots.size() == 1);
    CHECK(res.snapshots[0].first == 0);
}

TEST_CASE("all-zero data produce an all-zero trajectory") {
    auto pb = channel_problem(6, 1, 1);
    const RobinScheme scheme(pb, 1e-3);
    const StepFn step = [&](const CoupledState& s, double p) { return scheme.advance(s, p, 0); };
    RunOptions opts;
    opts.record_all = true;
    const RunResult res =
        run_time_loop(step, pb->zero_state(), {1e-3, 3}, [](double) { return 0.0; }, opts);
    REQUIRE(res.all_states.size() == 4);
    for (const CoupledState& s : res.all_states) {
        for (double v : s.u) CHECK(v == 0.0);
        for (double v : s.q) CHECK(v == 0.0);
        for (double v : s.lambda) CHECK(v == 0.0);
    }
}

TEST_CASE("lifted and pointwise multipliers coincide along a benchmark run") {
    RunConfig cfg = benchmark_config();
    cfg.nx = 12;
    cfg.ny_f = 1;
    cfg.ny_s = 1;
    auto pb = build_problem(cfg);
    const RobinScheme scheme(pb, cfg.dt);
    const InletPressure p_in = make_inlet(cfg);

    CoupledState s = pb->zero_state();
    for (int n = 0; n < 2; ++n) {
        const double p_next = p_in(s.t + cfg.dt);
        const CoupledState next = scheme.advance(s, p_next, 0);
        const std::vector<double> lifted = lift_residual_stress(
            pb->fluid, pb->trace, cfg.params.rho_f, cfg.dt, next.u, next.p, s.u, p_next);
        std::vector<double> diff(lifted.size());
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = lifted[i] - next.lambda[i];
        const double rel = std::sqrt(pb->trace.norm_sq(diff)) /
                           std::max(std::sqrt(pb->trace.norm_sq(next.lambda)), 1e-300);
        CHECK(rel <= 1e-10);
        s = next;
    }
}
