#include <doctest.h>

#include <cmath>
#include <vector>

#include "rls/schemes.hpp"

using namespace rls;

namespace {

// sample phi around x0 with spacing h: out[k] = phi(x0 + (k - center)*h)
std::vector<double> sample(double (*phi)(double), double x0, double h, int count, int center) {
    std::vector<double> v(count);
    for (int k = 0; k < count; ++k) v[k] = phi(x0 + (k - center) * h);
    return v;
}

double fsin(double x) { return std::sin(x); }
double flin(double x) { return 2.0 * x; }

}  // namespace

TEST_CASE("weno5 reproduces linear slopes exactly") {
    const double h = 0.01;
    const auto line = sample(flin, 0.3, h, 7, 3);
    CHECK(weno5_biased(std::span<const double>(line.data(), 6), h) ==
          doctest::Approx(2.0).epsilon(1e-13));
    const OneSidedDerivatives d = one_sided_derivatives(line, h, SchemeKind::WENO5);
    CHECK(d.dminus == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(d.dplus == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("weno5 observed order of accuracy is ~5 on smooth data") {
    const double x0 = 0.3;
    auto err = [&](double h) {
        const auto line = sample(fsin, x0, h, 7, 3);
        const OneSidedDerivatives d = one_sided_derivatives(line, h, SchemeKind::WENO5);
        return std::abs(d.dminus - std::cos(x0));
    };
    const double e1 = err(0.02), e2 = err(0.01);
    const double order = std::log2(e1 / e2);
    CHECK(order > 4.7);
    CHECK(order < 5.3);
}

TEST_CASE("weno5 on step data: bounded derivative, weights in [0,1]") {
    const double h = 0.1;
    const std::vector<double> step = {0.0, 0.0, 0.0, 1.0, 1.0, 1.0};
    double w[3];
    const double d = weno5_biased(step, h, w);
    CHECK(std::abs(d) <= (1.0 - 0.0) / h);
    for (int k = 0; k < 3; ++k) {
        CHECK(w[k] >= 0.0);
        CHECK(w[k] <= 1.0);
    }
    CHECK(w[0] + w[1] + w[2] == doctest::Approx(1.0));
}

TEST_CASE("weno-cu6 matches linear slopes and is high order on smooth data") {
    const double h = 0.01;
    const auto line = sample(flin, 0.3, h, 7, 3);
    CHECK(weno_cu6_biased(line, h) == doctest::Approx(2.0).epsilon(1e-13));

    const double x0 = 0.3;
    auto err = [&](double hh) {
        const auto l = sample(fsin, x0, hh, 7, 3);
        const OneSidedDerivatives d = one_sided_derivatives(l, hh, SchemeKind::WENOCU6);
        return std::abs(d.dminus - std::cos(x0));
    };
    const double order = std::log2(err(0.02) / err(0.01));
    CHECK(order > 5.0);  // 6th order in exact arithmetic

    // both schemes converge to the same derivative on smooth data
    const auto l = sample(fsin, x0, 0.01, 7, 3);
    const double d5 = one_sided_derivatives(l, 0.01, SchemeKind::WENO5).dminus;
    const double d6 = one_sided_derivatives(l, 0.01, SchemeKind::WENOCU6).dminus;
    CHECK(std::abs(d5 - d6) < 5.0 * std::pow(0.01, 5));
}

TEST_CASE("one-sided derivatives agree on smooth data as h shrinks") {
    const double x0 = 0.7;
    for (double h : {0.02, 0.01, 0.005}) {
        const auto l = sample(fsin, x0, h, 7, 3);
        const OneSidedDerivatives d = one_sided_derivatives(l, h, SchemeKind::WENO5);
        CHECK(std::abs(d.dminus - d.dplus) < 10.0 * std::pow(h, 5));
    }
}

TEST_CASE("upwind gradient selection") {
    const double h = 1.0 / 64;
    {
        // phi = x: gradient 1 for v = (1,0)
        std::vector<double> xline(7), yline(7, 0.0);
        for (int k = 0; k < 7; ++k) xline[k] = (k - 3) * h;
        CHECK(hj_upwind_gradient(xline, yline, h, 1.0, 0.0, SchemeKind::WENO5) ==
              doctest::Approx(1.0).epsilon(1e-13));
        CHECK(hj_upwind_gradient(xline, yline, h, 0.0, 0.0, SchemeKind::WENO5) == 0.0);
    }
    {
        // phi = x^2 + y^2 at (0.5, 0.5), v = (1,1): exact v.grad = 2
        const double cx = 0.5, cy = 0.5;
        std::vector<double> xline(7), yline(7);
        for (int k = 0; k < 7; ++k) {
            const double x = cx + (k - 3) * h, y = cy + (k - 3) * h;
            xline[k] = x * x + cy * cy;
            yline[k] = cx * cx + y * y;
        }
        CHECK(hj_upwind_gradient(xline, yline, h, 1.0, 1.0, SchemeKind::WENO5) ==
              doctest::Approx(2.0).epsilon(1e-12));
    }
    {
        // upwind1 on linear data
        std::vector<double> xline = {-0.1, 0.0, 0.1}, yline = {0.0, 0.0, 0.0};
        CHECK(hj_upwind_gradient(xline, yline, 0.1, -2.0, 0.0, SchemeKind::Upwind1) ==
              doctest::Approx(-2.0));
    }
}

namespace {

RegionalField vertical_two_region(const Grid& g, double xs) {
    RegionalField f(g);
    for (int j = -g.ghost; j < g.ny + g.ghost; ++j)
        for (int i = -g.ghost; i < g.nx + g.ghost; ++i) {
            f.chi[g.idx(i, j)] = g.xc(i) < xs ? 1 : 2;
            f.varphi[g.idx(i, j)] = std::abs(g.xc(i) - xs);
        }
    return f;
}

}  // namespace

TEST_CASE("semi-Lagrangian: zero velocity is the identity") {
    const Grid g = build_grid(16, 16, 0.0, 0.0, 1.0, 1.0, {});
    RegionalField f = vertical_two_region(g, 0.5);
    fill_ghosts(f, g);
    std::vector<double> vx(g.cell_count(), 0.0), vy(g.cell_count(), 0.0);
    RegionalField out = f;
    semi_lagrangian_advect(f, g, vx, vy, 0.01, nullptr, out);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            CHECK(out.varphi[g.idx(i, j)] == f.varphi[g.idx(i, j)]);
            CHECK(out.chi[g.idx(i, j)] == f.chi[g.idx(i, j)]);
        }
}

TEST_CASE("semi-Lagrangian: uniform shift by one cell is exact") {
    const Grid g = build_grid(16, 16, 0.0, 0.0, 1.0, 1.0, {});
    RegionalField f = vertical_two_region(g, 0.5);
    fill_ghosts(f, g);
    std::vector<double> vx(g.cell_count(), 1.0), vy(g.cell_count(), 0.0);
    RegionalField out = f;
    semi_lagrangian_advect(f, g, vx, vy, g.h, nullptr, out);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i) {
            CHECK(out.varphi[g.idx(i, j)] == doctest::Approx(f.varphi[g.idx(i - 1, j)]));
            CHECK(out.chi[g.idx(i, j)] == f.chi[g.idx(i - 1, j)]);
        }
}

TEST_CASE("semi-Lagrangian never invents an indicator outside the donor index set") {
    const Grid g = build_grid(16, 16, 0.0, 0.0, 1.0, 1.0, {});
    RegionalField f(g);
    // quadrants of four regions
    for (int j = -g.ghost; j < g.ny + g.ghost; ++j)
        for (int i = -g.ghost; i < g.nx + g.ghost; ++i) {
            const int q = (g.xc(i) < 0.5 ? 0 : 1) + (g.yc(j) < 0.5 ? 0 : 2);
            f.chi[g.idx(i, j)] = q + 1;
            f.varphi[g.idx(i, j)] =
                std::min(std::abs(g.xc(i) - 0.5), std::abs(g.yc(j) - 0.5));
        }
    std::vector<double> vx(g.cell_count(), 0.7), vy(g.cell_count(), -0.4);
    RegionalField out = f;
    const double dt = 0.9 * g.h;
    semi_lagrangian_advect(f, g, vx, vy, dt, nullptr, out);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int ix = g.idx(i, j);
            const double xd = g.xc(i) - dt * 0.7, yd = g.yc(j) + dt * 0.4;
            const LocalIndexSet xs =
                local_index_set(f, g, g.cell_of_x(xd), g.cell_of_y(yd));
            CHECK(xs.contains(out.chi[ix]));
        }
}
