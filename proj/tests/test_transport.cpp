#include <doctest.h>

#include <cmath>

#include "rls/scenarios.hpp"
#include "rls/transport.hpp"

using namespace rls;

TEST_CASE("compute_dt: advective, curvature and degenerate cases") {
    VelocitySpec adv;
    adv.kind = VelocitySpec::Kind::Uniform;
    CHECK(compute_dt(1.0, 1.0 / 64, 0.6, adv, 1.0) == doctest::Approx(0.6 / 64));
    CHECK(compute_dt(0.0, 1.0 / 64, 0.6, adv, 0.125) == doctest::Approx(0.125));
    CHECK_THROWS_AS(compute_dt(1.0, 0.01, 0.0, adv, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(compute_dt(1.0, 0.01, 1.5, adv, 1.0), std::invalid_argument);

    VelocitySpec curv;
    curv.kind = VelocitySpec::Kind::MeanCurvature;
    CHECK(compute_dt(123.0, 1.0 / 128, 0.6, curv, 1.0) ==
          doctest::Approx(1.0 / 65536).epsilon(1e-14));
}

TEST_CASE("eval_velocity: analytic fields") {
    const Grid g = build_grid(64, 64, 0.0, 0.0, 1.0, 1.0, {});
    RegionalField f(g);
    for (int ix = 0; ix < g.cell_count(); ++ix) {
        f.chi[ix] = 1;
        f.varphi[ix] = 1.0;
    }

    VelocitySpec rot;
    rot.kind = VelocitySpec::Kind::Rotation;
    rot.center = {0.5, 0.5};
    rot.omega = 2.0;
    // fixed point at the center: find the nearest cell center and check the
    // velocity magnitude is at most omega*h/2 there (center is off-lattice)
    const Vec2 vc = eval_velocity(rot, f, g, 31, 31, 1, 0.0);
    CHECK(norm(vc) <= 2.0 * g.h);
    // v = omega cross r
    const Vec2 v = eval_velocity(rot, f, g, 40, 31, 1, 0.0);
    CHECK(v.y > 0.0);
    CHECK(v.x == doctest::Approx(-2.0 * (g.yc(31) - 0.5)).epsilon(1e-12));

    VelocitySpec vortex;
    vortex.kind = VelocitySpec::Kind::SingleVortex;
    vortex.reversal_time = 3.0;
    // single-vortex stream field u = -sin^2(pi x) sin(2 pi y),
    // v = sin^2(pi y) sin(2 pi x); zero where sin(2 pi y) = 0
    {
        // 9x9 grid puts a cell center exactly at (0.5, 0.5)
        const Grid g8 = build_grid(9, 9, 0.0, 0.0, 1.0, 1.0, {});
        RegionalField f8(g8);
        const Vec2 u0 = eval_velocity(vortex, f8, g8, 4, 4, 1, 0.0);
        CHECK(u0.x == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(u0.y == doctest::Approx(0.0).epsilon(1e-12));
        // formula check at an off-axis center
        const int i = 3, j = 1;
        const double x = g8.xc(i), y = g8.yc(j);
        const Vec2 u1 = eval_velocity(vortex, f8, g8, i, j, 1, 0.0);
        CHECK(u1.x == doctest::Approx(-std::pow(std::sin(M_PI * x), 2) *
                                      std::sin(2.0 * M_PI * y)));
        CHECK(u1.y == doctest::Approx(std::pow(std::sin(M_PI * y), 2) *
                                      std::sin(2.0 * M_PI * x)));
        // reversal: negated field at t >= 3
        const Vec2 u2 = eval_velocity(vortex, f8, g8, i, j, 1, 3.0);
        CHECK(u2.x == doctest::Approx(-u1.x));
        CHECK(u2.y == doctest::Approx(-u1.y));
    }
}

TEST_CASE("eval_velocity: mean curvature shrinks a disk from both sides") {
    const Grid g = build_grid(128, 128, 0.0, 0.0, 1.0, 1.0, {});
    RegionalField f = init_circle_two_region(0.2, {0.5, 0.5}, g);
    fill_ghosts(f, g);
    VelocitySpec mc;
    mc.kind = VelocitySpec::Kind::MeanCurvature;
    mc.gamma = 1.0;

    // pick the cell nearest (0.7, 0.5), just at the interface
    const int i = g.cell_of_x(0.7), j = g.cell_of_y(0.5);
    for (int region : {1, 2}) {
        const Vec2 u = eval_velocity(mc, f, g, i, j, region, 0.0, ConstructOp::Clamped);
        // radial inward motion: u.x < 0 at the right interface point
        CHECK(u.x < 0.0);
        CHECK(std::abs(u.x) == doctest::Approx(1.0 / 0.2).epsilon(0.05));
        CHECK(std::abs(u.y) < 0.6);
    }
}

TEST_CASE("substeps: static and linear-transport behavior") {
    const Grid g = build_grid(32, 32, 0.0, 0.0, 1.0, 1.0, {});
    const double h = g.h;

    // two-region vertical interface placed just left of the center of cell 16
    const double eps = 0.2 * h;
    const double xs = g.xc(16) - eps;
    RegionalField f(g);
    for (int j = -g.ghost; j < g.ny + g.ghost; ++j)
        for (int i = -g.ghost; i < g.nx + g.ghost; ++i) {
            f.chi[g.idx(i, j)] = g.xc(i) < xs ? 1 : 2;
            f.varphi[g.idx(i, j)] = std::abs(g.xc(i) - xs);
        }

    // far from the interface, small dt: indicator unchanged
    {
        const CellUpdate u = substep_two_region(f, f, g, 4, 16, {1.0, 0.0}, 0.1 * h, 0.0,
                                                SchemeKind::WENO5);
        CHECK(u.chi == 1);
    }
    // v = 0 is the identity
    {
        const CellUpdate u = substep_two_region(f, f, g, 16, 16, {0.0, 0.0}, 0.5 * h, 0.0,
                                                SchemeKind::WENO5);
        CHECK(u.varphi == f.varphi[g.idx(16, 16)]);
        CHECK(u.chi == 2);
    }
    // one Euler step moving the interface right past the cell center flips
    // the indicator: phi' = eps - dt exactly for this piecewise-linear field
    {
        const double dt = h;  // interface moves h > eps
        const CellUpdate u = substep_two_region(f, f, g, 16, 16, {1.0, 0.0}, dt, 0.0,
                                                SchemeKind::WENO5);
        CHECK(u.chi == 1);
        CHECK(u.varphi == doctest::Approx(dt - eps).epsilon(1e-12));
    }
    // full cells advect the unsigned field
    {
        const CellUpdate u = substep_full(f, f, g, 4, 16, {1.0, 0.0}, 0.5 * h, 0.0,
                                          SchemeKind::WENO5);
        CHECK(u.chi == 1);
        CHECK(u.varphi == doctest::Approx(f.varphi[g.idx(4, 16)] + 0.5 * h).epsilon(1e-12));
    }
}

TEST_CASE("substep_complex: retains primary without sign change, reconstructs otherwise") {
    const Grid g = build_grid(32, 32, 0.0, 0.0, 1.0, 1.0, {});
    RegionalField f = init_split_disk(0.3, {0.5, 0.5}, 0.0, g);
    fill_ghosts(f, g);

    // junction cell near (0.2, 0.5)
    const int i = g.cell_of_x(0.2), j = g.cell_of_y(0.5);
    const LocalIndexSet xs = local_index_set(f, g, i, j);
    REQUIRE(xs.count == 3);

    // velocity pointing away: primary keeps the cell
    {
        std::array<Vec2, 9> v{};
        for (auto& vv : v) vv = {0.0, 0.0};
        const CellUpdate u = substep_complex(f, f, g, i, j, xs,
                                             std::span<const Vec2>(v.data(), xs.count),
                                             0.25 * g.h, 0.0, SchemeKind::WENO5);
        CHECK(u.chi == xs.ids[0]);
        CHECK(u.varphi == f.varphi[g.idx(i, j)]);
    }
    // strong sweep across the junction: output still drawn from the index
    // set with a non-negative distance (no void)
    {
        std::array<Vec2, 9> v{};
        for (auto& vv : v) vv = {1.0, 0.0};
        const CellUpdate u = substep_complex(f, f, g, i, j, xs,
                                             std::span<const Vec2>(v.data(), xs.count),
                                             0.9 * g.h, 0.0, SchemeKind::WENO5);
        CHECK(xs.contains(u.chi));
        CHECK(u.varphi >= 0.0);
    }
}

TEST_CASE("advance with zero velocity is the identity to machine precision") {
    const Grid g = build_grid(32, 32, 0.0, 0.0, 1.0, 1.0, {});
    RegionalField f = init_split_disk(0.3, {0.5, 0.5}, 0.0, g);
    fill_ghosts(f, g);
    RegionalField before = f;

    VelocitySpec zero;
    zero.kind = VelocitySpec::Kind::Uniform;
    zero.vx = zero.vy = 0.0;
    StepPlan plan;
    plan.scheme = SchemeKind::WENO5;
    for (auto alphas : {std::vector<double>{0.0}, std::vector<double>{0.0, 0.5}}) {
        plan.alphas = alphas;
        RegionalField test = before;
        advance(test, g, zero, plan, 0.0, 0.01);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                CHECK(test.varphi[g.idx(i, j)] == before.varphi[g.idx(i, j)]);
                CHECK(test.chi[g.idx(i, j)] == before.chi[g.idx(i, j)]);
            }
    }
}

TEST_CASE("indicator locality: new indicators come from the pre-step neighborhood") {
    const Grid g = build_grid(64, 64, 0.0, 0.0, 1.0, 1.0, {});
    RegionalField f = init_split_disk(0.3, {0.5, 0.5}, 0.0, g);
    fill_ghosts(f, g);

    VelocitySpec rot;
    rot.kind = VelocitySpec::Kind::Rotation;
    rot.center = {0.5, 0.5};
    rot.omega = 1.0;
    StepPlan plan;
    plan.scheme = SchemeKind::WENO5;
    plan.alphas = {0.0};

    double t = 0.0;
    for (int step = 0; step < 10; ++step) {
        RegionalField before = f;
        const double dt = 0.6 * g.h / 0.75;
        advance(f, g, rot, plan, t, dt);
        t += dt;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const LocalIndexSet xs = local_index_set(before, g, i, j);
                CHECK(xs.contains(f.chi[g.idx(i, j)]));
            }
    }
}


TEST_CASE("uniform advection over one period: interface band converges, labels restored") {
    // periodic two-region strip advected across the domain; the distance
    // field has kinks, so the interface band converges at a reduced order
    // while the indicators must come back exactly
    auto run_period = [](int n, double& band_err, int& chi_mismatches) {
        const Grid g =
            build_grid(n, n, 0.0, 0.0, 1.0, 1.0, {Boundary::Periodic, Boundary::Periodic});
        auto exact_dist = [&](double x) {
            double best = 1e300;
            for (int k = -1; k <= 1; ++k)
                best = std::min({best, std::abs(x - (0.3 + k)), std::abs(x - (0.7 + k))});
            return best;
        };
        RegionalField f(g);
        for (int j = -g.ghost; j < g.ny + g.ghost; ++j)
            for (int i = -g.ghost; i < g.nx + g.ghost; ++i) {
                const double x = g.xc(i) - std::floor(g.xc(i));
                f.chi[g.idx(i, j)] = (x >= 0.3 && x < 0.7) ? 2 : 1;
                f.varphi[g.idx(i, j)] = exact_dist(x);
            }
        VelocitySpec uni;
        uni.kind = VelocitySpec::Kind::Uniform;
        uni.vx = 1.0;
        StepPlan plan;
        plan.scheme = SchemeKind::WENO5;
        plan.alphas = {0.0};

        const double dt = 0.5 * g.h;
        double t = 0.0;
        RegionalField cur = f;
        const int steps = static_cast<int>(std::round(1.0 / dt));
        for (int s = 0; s < steps; ++s) {
            advance(cur, g, uni, plan, t, dt);
            t += dt;
        }
        band_err = 0.0;
        chi_mismatches = 0;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const int ix = g.idx(i, j);
                if (f.varphi[ix] < 6.0 * g.h)
                    band_err = std::max(band_err, std::abs(cur.varphi[ix] - f.varphi[ix]));
                if (cur.chi[ix] != f.chi[ix]) ++chi_mismatches;
            }
    };

    double e64 = 0.0, e128 = 0.0;
    int chi64 = 0, chi128 = 0;
    run_period(64, e64, chi64);
    run_period(128, e128, chi128);
    CHECK(chi64 == 0);
    CHECK(chi128 == 0);
    CHECK(e64 < 4e-3);
    CHECK(e128 < 1e-3);
    CHECK(e64 / e128 > 1.7);  // at least first-order at the distance kinks
}
