#include <doctest.h>

#include <cmath>
#include <random>

#include "rls/geometry.hpp"
#include "rls/scenarios.hpp"

using namespace rls;

namespace {

std::array<double, 25> patch5_of(double (*phi)(double, double), double cx, double cy, double h) {
    std::array<double, 25> p;
    int m = 0;
    for (int dj = -2; dj <= 2; ++dj)
        for (int di = -2; di <= 2; ++di, ++m) p[m] = phi(cx + di * h, cy + dj * h);
    return p;
}

double plane(double x, double) { return x - 0.5; }

constexpr double kCircleR = 0.2;
double circle_inside_positive(double x, double y) {
    return kCircleR - std::hypot(x - 0.5, y - 0.5);
}
double circle_outside_positive(double x, double y) {
    return std::hypot(x - 0.5, y - 0.5) - kCircleR;
}

}  // namespace

TEST_CASE("normal and curvature: planar interface") {
    const auto p = patch5_of(plane, 0.5, 0.5, 1.0 / 64);
    const GeometryAtCell g = normal_curvature(p, 1.0 / 64);
    CHECK(!g.degenerate);
    CHECK(g.n.x == doctest::Approx(1.0));
    CHECK(g.n.y == doctest::Approx(0.0));
    CHECK(g.kappa == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("curvature of a circle: |kappa| = 1/r, shrink-positive for the enclosed region") {
    const double h = 1.0 / 128;
    // evaluate at a point on the circle
    const double px = 0.5 + kCircleR, py = 0.5;
    const auto inside_pos = patch5_of(circle_inside_positive, px, py, h);
    const GeometryAtCell gi = normal_curvature(inside_pos, h);
    CHECK(gi.kappa == doctest::Approx(1.0 / kCircleR).epsilon(2e-3));  // +5
    // normal of the positive-inside field points toward the region (inward)
    CHECK(gi.n.x == doctest::Approx(-1.0).epsilon(1e-10));

    // the background's field sees the opposite sign; u = kappa*n is invariant
    const auto outside_pos = patch5_of(circle_outside_positive, px, py, h);
    const GeometryAtCell go = normal_curvature(outside_pos, h);
    CHECK(go.kappa == doctest::Approx(-1.0 / kCircleR).epsilon(2e-3));
    CHECK(go.n.x == doctest::Approx(1.0).epsilon(1e-10));  // radially outward
    CHECK(gi.kappa * gi.n.x == doctest::Approx(go.kappa * go.n.x).epsilon(1e-6));

    // second-order convergence of the curvature
    auto kerr = [&](double hh) {
        const auto p = patch5_of(circle_inside_positive, px, py, hh);
        return std::abs(normal_curvature(p, hh).kappa - 1.0 / kCircleR);
    };
    const double order = std::log2(kerr(1.0 / 64) / kerr(1.0 / 128));
    CHECK(order > 1.5);
    CHECK(order < 2.6);
}

TEST_CASE("degenerate gradient is flagged") {
    std::array<double, 25> p{};
    p.fill(0.7);
    CHECK(normal_curvature(p, 0.01).degenerate);
}

TEST_CASE("extract_interface: circle perimeter converges") {
    const Grid g = build_grid(256, 256, 0.0, 0.0, 1.0, 1.0, {});
    RegionalField f = init_circle_two_region(0.3, {0.5, 0.5}, g);
    fill_ghosts(f, g);
    const InterfaceGraph graph = extract_interface(f, g);
    CHECK(graph.junctions.empty());
    CHECK(graph.total_length() == doctest::Approx(2.0 * M_PI * 0.3).epsilon(2e-4));
}

TEST_CASE("extract_interface: grid-aligned line sits exactly on the contour") {
    const Grid g = build_grid(64, 64, 0.0, 0.0, 1.0, 1.0, {});
    RegionalField f(g);
    for (int j = -g.ghost; j < g.ny + g.ghost; ++j)
        for (int i = -g.ghost; i < g.nx + g.ghost; ++i) {
            f.chi[g.idx(i, j)] = g.xc(i) < 0.5 ? 1 : 2;
            f.varphi[g.idx(i, j)] = std::abs(g.xc(i) - 0.5);
        }
    const InterfaceGraph graph = extract_interface(f, g);
    CHECK(!graph.segments.empty());
    for (const Segment& s : graph.segments) {
        CHECK(std::abs(s.a.x - 0.5) < 1e-12);
        CHECK(std::abs(s.b.x - 0.5) < 1e-12);
        CHECK(s.ra == 1);
        CHECK(s.rb == 2);
    }
    CHECK(graph.total_length() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("extract_interface: split disk has exactly two junctions at the diameter ends") {
    for (int n : {64, 128}) {
        const Grid g = build_grid(n, n, 0.0, 0.0, 1.0, 1.0, {});
        RegionalField f = init_split_disk(0.3, {0.5, 0.5}, 0.0, g);
        fill_ghosts(f, g);
        const InterfaceGraph graph = extract_interface(f, g);
        REQUIRE(graph.junctions.size() == 2);
        std::vector<Vec2> ends = {{0.2, 0.5}, {0.8, 0.5}};
        for (const Vec2& e : ends) {
            double best = 1e300;
            for (const Vec2& j : graph.junctions) best = std::min(best, dist(j, e));
            CHECK(best < g.h);
        }
        // pairwise boundary between the half disks is the diameter
        CHECK(graph.pair_length(2, 3) == doctest::Approx(0.6).epsilon(0.05));
    }
}

TEST_CASE("region areas: exact and sub-cell accurate cases") {
    const Grid g = build_grid(64, 64, 0.0, 0.0, 1.0, 1.0, {});
    {
        RegionalField f(g);
        for (int ix = 0; ix < g.cell_count(); ++ix) {
            f.chi[ix] = 3;
            f.varphi[ix] = 1.0;
        }
        CHECK(region_area(f, g, 3) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(region_area(f, g, 9) == 0.0);
    }
    {
        // half domain split by a grid-aligned line: exactly 0.5
        RegionalField f(g);
        for (int j = -g.ghost; j < g.ny + g.ghost; ++j)
            for (int i = -g.ghost; i < g.nx + g.ghost; ++i) {
                f.chi[g.idx(i, j)] = g.xc(i) < 0.5 ? 1 : 2;
                f.varphi[g.idx(i, j)] = std::abs(g.xc(i) - 0.5);
            }
        CHECK(region_area(f, g, 1) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(region_area(f, g, 2) == doctest::Approx(0.5).epsilon(1e-12));
    }
    {
        const Grid g2 = build_grid(256, 256, 0.0, 0.0, 1.0, 1.0, {});
        RegionalField f = init_circle_two_region(0.22, {0.5, 0.5}, g2);
        fill_ghosts(f, g2);
        const double exact = M_PI * 0.22 * 0.22;
        CHECK(region_area(f, g2, 2) == doctest::Approx(exact).epsilon(1e-3));
        // partition: areas sum to the domain area
        const auto all = region_areas(f, g2);
        double sum = 0.0;
        for (const auto& [r, a] : all) sum += a;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("hausdorff distance basics and metric properties") {
    {
        std::vector<Vec2> a = {{0, 0}, {1, 0}, {0.5, 0.3}};
        CHECK(hausdorff(a, a) == 0.0);
    }
    {
        std::vector<Vec2> a = {{0, 0}};
        std::vector<Vec2> b = {{3, 4}};
        CHECK(hausdorff(a, b) == doctest::Approx(5.0));
    }
    {
        // concentric circles r = 0.2, 0.3 -> distance 0.1
        std::vector<Vec2> a, b;
        for (int k = 0; k < 720; ++k) {
            const double t = 2.0 * M_PI * k / 720;
            a.push_back({0.5 + 0.2 * std::cos(t), 0.5 + 0.2 * std::sin(t)});
            b.push_back({0.5 + 0.3 * std::cos(t), 0.5 + 0.3 * std::sin(t)});
        }
        CHECK(hausdorff(a, b) == doctest::Approx(0.1).epsilon(1e-4));
    }
    {
        std::vector<Vec2> empty;
        std::vector<Vec2> one = {{0, 0}};
        CHECK_THROWS_AS(hausdorff(empty, one), std::invalid_argument);
    }
    {
        // symmetry and triangle inequality on random sets
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<Vec2> a, b, c;
        for (int k = 0; k < 40; ++k) {
            a.push_back({u(rng), u(rng)});
            b.push_back({u(rng), u(rng)});
            c.push_back({u(rng), u(rng)});
        }
        const double ab = hausdorff(a, b), ba = hausdorff(b, a);
        CHECK(ab == doctest::Approx(ba));
        CHECK(ab <= hausdorff(a, c) + hausdorff(c, b) + 1e-12);
    }
}

TEST_CASE("error norms over the band") {
    const Grid g = build_grid(64, 64, 0.0, 0.0, 1.0, 1.0, {});
    RegionalField f = init_circle_two_region(0.2, {0.5, 0.5}, g);
    fill_ghosts(f, g);
    auto exact = [](double x, double y) { return std::abs(std::hypot(x - 0.5, y - 0.5) - 0.2); };

    const BandSpec band{10.0, {}, 0.0};
    const ErrorNorms zero = error_norms(f, g, exact, band);
    CHECK(zero.e1 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(zero.einf == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(zero.band_cells > 0);

    RegionalField shifted = f;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) shifted.varphi[g.idx(i, j)] += 0.01;
    const ErrorNorms c = error_norms(shifted, g, exact, band);
    CHECK(c.e1 == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(c.einf == doctest::Approx(0.01).epsilon(1e-12));

    // junction-gated band: empty when no cell is near the points
    BandSpec gated{10.0, {{10.0, 10.0}}, 0.01};
    CHECK_THROWS(error_norms(f, g, exact, gated));
}
