#include "rls/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace rls {

namespace {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 d = b - a;
    const double len2 = d.x * d.x + d.y * d.y;
    double t = len2 > 0.0 ? ((p.x - a.x) * d.x + (p.y - a.y) * d.y) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, a + t * d);
}

}  // namespace

RegionalField init_circle_two_region(double r, Vec2 center, const Grid& grid) {
    RegionalField f(grid);
    for (int j = -grid.ghost; j < grid.ny + grid.ghost; ++j) {
        for (int i = -grid.ghost; i < grid.nx + grid.ghost; ++i) {
            const int ix = grid.idx(i, j);
            const double rad = dist({grid.xc(i), grid.yc(j)}, center);
            f.varphi[ix] = std::abs(rad - r);
            f.chi[ix] = rad < r ? 2 : 1;
        }
    }
    return f;
}

RegionalField init_split_disk(double r0, Vec2 center, double split_angle, const Grid& grid) {
    RegionalField f(grid);
    const Vec2 dir{std::cos(split_angle), std::sin(split_angle)};
    for (int j = -grid.ghost; j < grid.ny + grid.ghost; ++j) {
        for (int i = -grid.ghost; i < grid.nx + grid.ghost; ++i) {
            const int ix = grid.idx(i, j);
            const Vec2 rel = Vec2{grid.xc(i), grid.yc(j)} - center;
            const double rad = norm(rel);
            if (rad >= r0) {
                f.varphi[ix] = rad - r0;
                f.chi[ix] = 1;
            } else {
                const double side = dir.x * rel.y - dir.y * rel.x;
                f.varphi[ix] = std::min(r0 - rad, std::abs(side));
                f.chi[ix] = side > 0.0 ? 2 : 3;
            }
        }
    }
    return f;
}

RegionalField init_triple_point(Vec2 location, const Grid& grid) {
    RegionalField f(grid);
    for (int j = -grid.ghost; j < grid.ny + grid.ghost; ++j) {
        for (int i = -grid.ghost; i < grid.nx + grid.ghost; ++i) {
            const int ix = grid.idx(i, j);
            const double x = grid.xc(i), y = grid.yc(j);
            if (x < location.x) {
                f.varphi[ix] = location.x - x;
                f.chi[ix] = 1;
            } else {
                f.varphi[ix] = std::min(x - location.x, std::abs(y - location.y));
                f.chi[ix] = y >= location.y ? 2 : 3;
            }
        }
    }
    return f;
}

RegionalField init_double_triple(double r0, const Grid& grid) {
    return init_split_disk(r0, {0.3, 0.5}, M_PI / 2.0, grid);
}

RegionalField init_t_junction(const Grid& grid) {
    RegionalField f(grid);
    const double ym = 0.5, xm = 0.5;
    for (int j = -grid.ghost; j < grid.ny + grid.ghost; ++j) {
        for (int i = -grid.ghost; i < grid.nx + grid.ghost; ++i) {
            const int ix = grid.idx(i, j);
            const double x = grid.xc(i), y = grid.yc(j);
            const double d_horizontal = std::abs(y - ym);
            const double d_vertical =
                y >= ym ? std::abs(x - xm) : std::sqrt((x - xm) * (x - xm) + (y - ym) * (y - ym));
            f.varphi[ix] = std::min(d_horizontal, d_vertical);
            f.chi[ix] = y < ym ? 1 : (x < xm ? 2 : 3);
        }
    }
    return f;
}

RegionalField init_voronoi_regions(int n_regions, std::uint64_t seed, const Grid& grid) {
    if (n_regions < 2)
        throw std::invalid_argument("init_voronoi_regions: need at least 2 regions");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(grid.x0, grid.x0 + grid.lx);
    std::uniform_real_distribution<double> uy(grid.y0, grid.y0 + grid.ly);
    std::vector<Vec2> sites(n_regions);
    for (auto& s : sites) s = {ux(rng), uy(rng)};

    // periodic boundaries use the toroidal metric via shifted copies
    const bool periodic =
        grid.boundary.x == Boundary::Periodic && grid.boundary.y == Boundary::Periodic;
    struct Copy {
        Vec2 p;
        int id;
    };
    std::vector<Copy> copies;
    for (int m = 0; m < n_regions; ++m) {
        if (periodic) {
            for (int sy = -1; sy <= 1; ++sy)
                for (int sx = -1; sx <= 1; ++sx)
                    copies.push_back({{sites[m].x + sx * grid.lx, sites[m].y + sy * grid.ly},
                                      m + 1});
        } else {
            copies.push_back({sites[m], m + 1});
        }
    }

    RegionalField f(grid);
    const int knear = std::min<int>(10, copies.size());
    std::vector<std::pair<double, int>> order(copies.size());  // (dist2, copy index)

    for (int j = -grid.ghost; j < grid.ny + grid.ghost; ++j) {
        for (int i = -grid.ghost; i < grid.nx + grid.ghost; ++i) {
            const int ix = grid.idx(i, j);
            const Vec2 p{grid.xc(i), grid.yc(j)};
            for (std::size_t m = 0; m < copies.size(); ++m) {
                const double dx = p.x - copies[m].p.x, dy = p.y - copies[m].p.y;
                order[m] = {dx * dx + dy * dy, static_cast<int>(m)};
            }
            std::partial_sort(order.begin(), order.begin() + knear, order.end());

            f.chi[ix] = copies[order[0].second].id;

            // distance to the closest clipped bisector among the near sites
            double best = 1e300;
            for (int a = 0; a < knear; ++a) {
                for (int b = a + 1; b < knear; ++b) {
                    const Vec2 A = copies[order[a].second].p, B = copies[order[b].second].p;
                    const Vec2 ab = B - A;
                    const double ablen = norm(ab);
                    if (ablen < 1e-12) continue;
                    const Vec2 mid = 0.5 * (A + B);
                    const Vec2 dir{-ab.y / ablen, ab.x / ablen};
                    // clip the bisector line against domination by other near sites
                    double smin = -4.0 * (grid.lx + grid.ly), smax = -smin;
                    bool empty = false;
                    for (int c = 0; c < knear && !empty; ++c) {
                        if (c == a || c == b) continue;
                        const Vec2 C = copies[order[c].second].p;
                        // |P-A|^2 <= |P-C|^2 with P = mid + s*dir: linear in s
                        const double k1 = 2.0 * (dir.x * (C.x - A.x) + dir.y * (C.y - A.y));
                        const double k0 = (mid.x - C.x) * (mid.x - C.x) +
                                          (mid.y - C.y) * (mid.y - C.y) -
                                          ((mid.x - A.x) * (mid.x - A.x) +
                                           (mid.y - A.y) * (mid.y - A.y));
                        // constraint: k0 - k1*s >= 0
                        if (std::abs(k1) < 1e-14) {
                            if (k0 < 0.0) empty = true;
                        } else if (k1 > 0.0) {
                            smax = std::min(smax, k0 / k1);
                        } else {
                            smin = std::max(smin, k0 / k1);
                        }
                        if (smin > smax) empty = true;
                    }
                    if (empty) continue;
                    const double d = point_segment_distance(p, mid + smin * dir, mid + smax * dir);
                    best = std::min(best, d);
                }
            }
            f.varphi[ix] = best;
        }
    }
    return f;
}

RegionalField init_concentric_circles(const Grid& grid) {
    RegionalField f(grid);
    const Vec2 c{0.5, 0.75};
    const double r_in = 0.08, r_out = 0.22;
    for (int j = -grid.ghost; j < grid.ny + grid.ghost; ++j) {
        for (int i = -grid.ghost; i < grid.nx + grid.ghost; ++i) {
            const int ix = grid.idx(i, j);
            const double rad = dist({grid.xc(i), grid.yc(j)}, c);
            f.varphi[ix] = std::min(std::abs(rad - r_in), std::abs(rad - r_out));
            f.chi[ix] = rad < r_in ? 3 : (rad < r_out ? 2 : 1);
        }
    }
    return f;
}

RegionalField init_three_region_spiral(const Grid& grid) {
    return init_split_disk(0.25, {0.5, 0.5}, M_PI / 2.0, grid);
}

int count_bands(const RegionalField& field, const Grid& grid, Vec2 p0, Vec2 p1) {
    const double len = dist(p0, p1);
    const int samples = std::max(2, static_cast<int>(std::ceil(2.0 * len / grid.h)));
    int changes = 0;
    int prev = 0;
    for (int s = 0; s <= samples; ++s) {
        const double t = static_cast<double>(s) / samples;
        const Vec2 p = p0 + t * (p1 - p0);
        const int i = grid.cell_of_x(p.x), j = grid.cell_of_y(p.y);
        const int c = field.chi[grid.idx(i, j)];
        if (s > 0 && c != prev) ++changes;
        prev = c;
    }
    return changes;
}

double mullins_rate(int n_edges, double gamma) {
    return 2.0 * M_PI * gamma * (n_edges / 6.0 - 1.0);
}

std::vector<AreaSlopeFit> track_region_areas(const AreaSeries& series, double gamma) {
    std::vector<AreaSlopeFit> fits;
    const std::size_t nt = series.times.size();
    if (nt < 3) return fits;

    for (const auto& [region, areas] : series.areas) {
        const auto eit = series.edges.find(region);
        std::size_t start = 0;
        while (start < nt) {
            // maximal run with constant edge count and the region alive
            if (areas[start] <= 1e-12) {
                ++start;
                continue;
            }
            std::size_t end = start + 1;
            const int n_edges = eit != series.edges.end() ? eit->second[start] : 0;
            while (end < nt && areas[end] > 1e-12 &&
                   (eit == series.edges.end() || eit->second[end] == n_edges))
                ++end;

            if (end - start >= 3) {
                // least-squares slope of A(t)
                double st = 0.0, sa = 0.0, stt = 0.0, sta = 0.0;
                const double m = static_cast<double>(end - start);
                for (std::size_t k = start; k < end; ++k) {
                    st += series.times[k];
                    sa += areas[k];
                    stt += series.times[k] * series.times[k];
                    sta += series.times[k] * areas[k];
                }
                const double denom = m * stt - st * st;
                if (std::abs(denom) > 1e-30) {
                    AreaSlopeFit fit;
                    fit.region = region;
                    fit.t0 = series.times[start];
                    fit.t1 = series.times[end - 1];
                    fit.n_edges = n_edges;
                    fit.slope = (m * sta - st * sa) / denom;
                    fit.theory = mullins_rate(n_edges, gamma);
                    fit.samples = static_cast<int>(end - start);
                    fits.push_back(fit);
                }
            }
            start = end;
        }
    }
    return fits;
}

namespace {

double rotated_split_disk_distance(double x, double y, double t, double r0, Vec2 center,
                                   double omega, double angle0) {
    // rigid rotation: evaluate the initial field at the back-rotated point
    const double a = -omega * t;
    const double ca = std::cos(a), sa = std::sin(a);
    const Vec2 rel{x - center.x, y - center.y};
    const Vec2 back{ca * rel.x - sa * rel.y, sa * rel.x + ca * rel.y};
    const double rad = norm(back);
    if (rad >= r0) return rad - r0;
    const Vec2 dir{std::cos(angle0), std::sin(angle0)};
    const double side = dir.x * back.y - dir.y * back.x;
    return std::min(r0 - rad, std::abs(side));
}

std::vector<Vec2> sample_circle(Vec2 c, double r, double spacing) {
    const int npts = std::max(8, static_cast<int>(std::ceil(2.0 * M_PI * r / spacing)));
    std::vector<Vec2> pts(npts);
    for (int k = 0; k < npts; ++k) {
        const double a = 2.0 * M_PI * k / npts;
        pts[k] = {c.x + r * std::cos(a), c.y + r * std::sin(a)};
    }
    return pts;
}

void sample_segment_points(Vec2 a, Vec2 b, double spacing, std::vector<Vec2>& out) {
    const double len = dist(a, b);
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    for (int k = 0; k <= pieces; ++k) out.push_back(a + (static_cast<double>(k) / pieces) * (b - a));
}

}  // namespace

std::vector<std::string> scenario_names() {
    return {"circle_expansion", "triple_point", "double_triple", "rotation",
            "single_vortex",    "t_junction",   "mullins",       "normal_driven"};
}

Scenario make_scenario(const std::string& name, int n) {
    Scenario sc;
    sc.name = name;
    sc.default_n = n;

    if (name == "circle_expansion") {
        const Vec2 c{0.5, 0.5};
        const double r0 = 0.2, speed = 1.0;
        sc.plan.scheme = SchemeKind::WENO5;
        sc.plan.cfl = 0.5;
        sc.plan.alphas = {0.0};
        sc.plan.geom_op = ConstructOp::Plain;
        sc.velocity.kind = VelocitySpec::Kind::Radial;
        sc.velocity.center = c;
        sc.velocity.speed = speed;
        sc.t_end = 0.2;
        sc.snapshot_times = {0.1, 0.2};
        sc.init = [=](const Grid& g, std::uint64_t) { return init_circle_two_region(r0, c, g); };
        sc.exact_distance = [=](double x, double y, double t) {
            return std::abs(dist({x, y}, c) - (r0 + speed * t));
        };
        sc.exact_network = [=](double t, double spacing) {
            return sample_circle(c, r0 + speed * t, spacing);
        };
        sc.error_band = BandSpec{10.0, {}, 0.0};
        return sc;
    }

    if (name == "triple_point" || name == "double_triple") {
        sc.plan.scheme = SchemeKind::WENO5;
        sc.plan.cfl = 0.6;
        sc.plan.alphas = {0.0};
        sc.plan.geom_op = ConstructOp::Plain;
        sc.velocity.kind = VelocitySpec::Kind::Uniform;
        sc.velocity.vx = 1.0;
        sc.velocity.vy = 0.0;
        sc.t_end = 0.4;
        sc.snapshot_times = {0.2, 0.4};
        sc.error_band = BandSpec{1.2, {}, 0.05};
        if (name == "triple_point") {
            const Vec2 loc{0.2, 0.5};
            sc.init = [=](const Grid& g, std::uint64_t) { return init_triple_point(loc, g); };
            sc.exact_distance = [=](double x, double y, double t) {
                const double xt = loc.x + t;
                if (x < xt) return xt - x;
                return std::min(x - xt, std::abs(y - loc.y));
            };
            sc.exact_network = [=](double t, double spacing) {
                std::vector<Vec2> pts;
                const double xt = loc.x + t;
                sample_segment_points({xt, 0.0}, {xt, 1.0}, spacing, pts);
                sample_segment_points({xt, loc.y}, {1.0, loc.y}, spacing, pts);
                return pts;
            };
            sc.exact_junctions = [=](double t) {
                return std::vector<Vec2>{{loc.x + t, loc.y}};
            };
        } else {
            const double r0 = 0.3;
            const Vec2 c0{0.3, 0.5};
            sc.init = [=](const Grid& g, std::uint64_t) { return init_double_triple(r0, g); };
            sc.exact_distance = [=](double x, double y, double t) {
                const Vec2 c{c0.x + t, c0.y};
                const Vec2 rel{x - c.x, y - c.y};
                const double rad = norm(rel);
                if (rad >= r0) return rad - r0;
                return std::min(r0 - rad, std::abs(rel.x));
            };
            sc.exact_network = [=](double t, double spacing) {
                const Vec2 c{c0.x + t, c0.y};
                std::vector<Vec2> pts = sample_circle(c, r0, spacing);
                sample_segment_points({c.x, c.y - r0}, {c.x, c.y + r0}, spacing, pts);
                return pts;
            };
            sc.exact_junctions = [=](double t) {
                return std::vector<Vec2>{{c0.x + t, c0.y - r0}, {c0.x + t, c0.y + r0}};
            };
        }
        return sc;
    }

    if (name == "rotation") {
        const Vec2 c{0.5, 0.5};
        const double r0 = 0.3, omega = 1.0, angle0 = 0.0;
        sc.plan.scheme = SchemeKind::WENO5;
        sc.plan.cfl = 0.6;
        sc.plan.alphas = {0.0};
        sc.plan.geom_op = ConstructOp::Plain;
        sc.velocity.kind = VelocitySpec::Kind::Rotation;
        sc.velocity.center = c;
        sc.velocity.omega = omega;
        sc.t_end = M_PI / 2.0;
        sc.snapshot_times = {M_PI / 8.0, M_PI / 4.0, M_PI / 2.0};
        sc.init = [=](const Grid& g, std::uint64_t) { return init_split_disk(r0, c, angle0, g); };
        sc.exact_distance = [=](double x, double y, double t) {
            return rotated_split_disk_distance(x, y, t, r0, c, omega, angle0);
        };
        sc.exact_network = [=](double t, double spacing) {
            std::vector<Vec2> pts = sample_circle(c, r0, spacing);
            const double a = angle0 + omega * t;
            const Vec2 dir{std::cos(a), std::sin(a)};
            sample_segment_points(c - r0 * dir, c + r0 * dir, spacing, pts);
            return pts;
        };
        sc.exact_junctions = [=](double t) {
            const double a = angle0 + omega * t;
            const Vec2 dir{std::cos(a), std::sin(a)};
            return std::vector<Vec2>{c - r0 * dir, c + r0 * dir};
        };
        sc.error_band = BandSpec{10.0, {}, 0.0};
        return sc;
    }

    if (name == "single_vortex") {
        sc.plan.scheme = SchemeKind::WENO5;
        sc.plan.cfl = 0.6;
        sc.plan.alphas = {0.0, 0.5};
        sc.plan.geom_op = ConstructOp::Plain;
        sc.velocity.kind = VelocitySpec::Kind::SingleVortex;
        sc.velocity.reversal_time = 3.0;
        sc.t_end = 6.0;
        sc.snapshot_times = {1.5, 3.0, 6.0};
        // the stretching flow needs periodic redistancing or the thinning
        // filament evaporates well before the grid scale demands it
        sc.plan.reinit_every = 14;
        sc.reinit.max_iters = 30;
        sc.reinit.tol = 0.025 / n;
        sc.reinit.quiet = true;
        sc.init = [](const Grid& g, std::uint64_t) { return init_concentric_circles(g); };
        return sc;
    }

    if (name == "t_junction") {
        sc.plan.scheme = SchemeKind::WENO5;
        sc.plan.cfl = 0.6;
        sc.plan.alphas = {0.0};
        sc.plan.geom_op = ConstructOp::Clamped;
        sc.plan.reinit_every = 5;
        sc.reinit.max_iters = 20;
        sc.reinit.tol = 0.025 / n;
        sc.reinit.quiet = true;
        sc.velocity.kind = VelocitySpec::Kind::MeanCurvature;
        sc.velocity.gamma = 1.0;
        sc.t_end = 0.02;
        sc.snapshot_times = {0.01, 0.02};
        sc.init = [](const Grid& g, std::uint64_t) { return init_t_junction(g); };
        return sc;
    }

    if (name == "mullins") {
        sc.bc = {Boundary::Periodic, Boundary::Periodic};
        sc.plan.scheme = SchemeKind::WENO5;
        sc.plan.cfl = 0.6;
        sc.plan.alphas = {0.0};
        sc.plan.geom_op = ConstructOp::Clamped;
        sc.plan.reinit_every = 5;
        sc.velocity.kind = VelocitySpec::Kind::MeanCurvature;
        sc.velocity.gamma = 1.0;
        sc.t_end = 0.04;
        sc.snapshot_times = {0.01, 0.02, 0.03, 0.04};
        sc.initial_reinit = true;
        sc.reinit.max_iters = 30;
        sc.reinit.tol = 0.025 / n;
        sc.reinit.quiet = true;
        sc.area_sample_every = 32;
        sc.track_edges = true;
        sc.init = [](const Grid& g, std::uint64_t seed) {
            return init_voronoi_regions(15, seed, g);
        };
        return sc;
    }

    if (name == "normal_driven") {
        sc.plan.scheme = SchemeKind::WENO5;
        sc.plan.cfl = 0.6;
        sc.plan.alphas = {0.0};
        sc.plan.geom_op = ConstructOp::Clamped;
        sc.plan.reinit_every = 5;
        sc.velocity.kind = VelocitySpec::Kind::NormalDriven;
        sc.reinit.max_iters = 20;
        sc.reinit.tol = 0.025 / n;
        sc.reinit.quiet = true;
        sc.t_end = 0.288;
        sc.snapshot_times = {0.072, 0.144, 0.216, 0.288};
        sc.band_k = 8;
        sc.track_band_count = true;
        sc.band_ray_p0 = {0.0, 0.5};
        sc.band_ray_p1 = {1.0, 0.5};
        sc.init = [](const Grid& g, std::uint64_t) { return init_three_region_spiral(g); };
        return sc;
    }

    if (name == "foam")
        throw std::invalid_argument(
            "scenario 'foam' (dry-foam flow coupling) is unsupported in this build");
    std::string msg = "unknown scenario '" + name + "'; valid names:";
    for (const auto& s : scenario_names()) msg += " " + s;
    throw std::invalid_argument(msg);
}

}  // namespace rls
