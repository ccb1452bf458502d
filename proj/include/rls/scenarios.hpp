#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rls/geometry.hpp"
#include "rls/grid.hpp"
#include "rls/regional.hpp"
#include "rls/reinit.hpp"
#include "rls/transport.hpp"

namespace rls {

// Initial-condition builders. All produce exact distance fields.

/// chi = 1 outside the circle, 2 inside.
RegionalField init_circle_two_region(double r, Vec2 center, const Grid& grid);

/// Disk split by a diameter at `split_angle` (0 = split line along x):
/// background 1, the two half-disks 2 and 3.
RegionalField init_split_disk(double r0, Vec2 center, double split_angle, const Grid& grid);

/// Three sectors meeting at `location`: region 1 left of the vertical
/// interface, regions 2 (top) and 3 (bottom) right of it.
RegionalField init_triple_point(Vec2 location, const Grid& grid);

/// Disk of radius r0 centered at (0.3, 0.5) split by a vertical diameter;
/// its two junctions sit at (0.3, 0.5 +- r0).
RegionalField init_double_triple(double r0, const Grid& grid);

/// Horizontal interface at y = 0.5 under regions 2|3 split at x = 0.5:
/// the junction forms a T at (0.5, 0.5).
RegionalField init_t_junction(const Grid& grid);

/// Voronoi partition of n seeded random sites (toroidal metric under
/// periodic boundaries); varphi approximates the distance to the nearest
/// Voronoi edge, exact near the network.
RegionalField init_voronoi_regions(int n_regions, std::uint64_t seed, const Grid& grid);

/// Concentric circles at (0.5, 0.75) with radii 0.08 and 0.22:
/// background 1, annulus 2, core 3.
RegionalField init_concentric_circles(const Grid& grid);

/// Two half-disk regions 2 and 3 (vertical split) in background 1, the
/// starting layout for the normal-driven spiral flow.
RegionalField init_three_region_spiral(const Grid& grid);

/// Number of indicator changes along the segment p0 -> p1 (sampled at h/2).
int count_bands(const RegionalField& field, const Grid& grid, Vec2 p0, Vec2 p1);

/// Recorded per-region area and edge-count series.
struct AreaSeries {
    std::vector<double> times;
    std::map<int, std::vector<double>> areas;  // absent regions recorded as 0
    std::map<int, std::vector<int>> edges;     // distinct boundary neighbors
    // neighbor counts ignoring short contacts; disagreement with `edges`
    // marks a region mid-way through a topology change
    std::map<int, std::vector<int>> edges_strict;
};

struct AreaSlopeFit {
    int region = 0;
    double t0 = 0.0, t1 = 0.0;
    int n_edges = 0;
    double slope = 0.0;   // least-squares dA/dt over [t0, t1]
    double theory = 0.0;  // 2*pi*gamma*(n/6 - 1)
    int samples = 0;
};

/// Per-interval fitted dA/dt between topology events (edge-count changes or
/// region destruction), with the edge-count law value alongside.
std::vector<AreaSlopeFit> track_region_areas(const AreaSeries& series, double gamma);

double mullins_rate(int n_edges, double gamma);

/// Scenario definition: initial condition, velocity, schedule and metrics.
struct Scenario {
    std::string name;
    int default_n = 64;
    double x0 = 0.0, y0 = 0.0, lx = 1.0, ly = 1.0;
    BoundarySpec bc;
    StepPlan plan;
    VelocitySpec velocity;
    double t_end = 1.0;
    int band_k = 0;  // 0 = narrow band off
    bool initial_reinit = false;
    ReinitPlan reinit;
    std::vector<double> snapshot_times;
    int area_sample_every = 0;   // steps between area samples, 0 = off
    bool track_edges = false;
    bool track_band_count = false;
    Vec2 band_ray_p0{}, band_ray_p1{};

    std::function<RegionalField(const Grid&, std::uint64_t seed)> init;
    // Optional exact references.
    std::function<double(double x, double y, double t)> exact_distance;
    std::function<std::vector<Vec2>(double t, double spacing)> exact_network;
    std::function<std::vector<Vec2>(double t)> exact_junctions;
    std::optional<BandSpec> error_band;  // enables eps accumulation
};

std::vector<std::string> scenario_names();

/// Builds the named preset sized for grid resolution n.
/// Throws std::invalid_argument for unknown or unsupported names.
Scenario make_scenario(const std::string& name, int n);

}  // namespace rls
