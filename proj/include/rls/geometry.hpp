#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rls/grid.hpp"
#include "rls/regional.hpp"

namespace rls {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
double norm(Vec2 a);
double dist(Vec2 a, Vec2 b);

/// Interface segment between regions `ra` and `rb` (unordered, ra < rb).
struct Segment {
    Vec2 a, b;
    int ra = 0, rb = 0;
};

/// Extracted interface network: pairwise polyline segments plus the points
/// where three or more regions meet.
struct InterfaceGraph {
    std::vector<Segment> segments;
    std::vector<Vec2> junctions;

    double total_length() const;
    double pair_length(int ra, int rb) const;
    /// Segment endpoints and intermediate samples at most `spacing` apart.
    std::vector<Vec2> sample(double spacing) const;
    std::vector<Vec2> sample_pair(int ra, int rb, double spacing) const;
    /// Distinct neighbor regions of `region` over segments longer in total
    /// than `min_total_length`.
    std::vector<int> neighbors_of(int region, double min_total_length) const;
};

struct GeometryAtCell {
    Vec2 n{};            // grad(phi)/|grad(phi)|
    double kappa = 0.0;  // signed so a disk-shaped region shrinks under u = kappa*n
    bool degenerate = false;
};

/// Normal and curvature from a 5x5 patch of signed local level-set values
/// (row-major, patch[12] at the cell). Second-order central differences on
/// the inner 3x3; |grad| < 1e-9 flags a degenerate direction.
GeometryAtCell normal_curvature(const std::array<double, 25>& patch, double h);
GeometryAtCell normal_curvature3(const double patch3[9], double h);

/// Pairwise marching squares on cell-corner values of the constructed local
/// level sets, clipped to the argmax decision of the reconstruction, so the
/// segments partition the domain with no void or overlap. Junction points are
/// emitted (and merged within 1.5h) where three pairwise contours meet.
InterfaceGraph extract_interface(const RegionalField& field, const Grid& grid);

/// Sub-cell accurate area of one region (bilinear-clipped cell fractions).
double region_area(const RegionalField& field, const Grid& grid, int chi);
/// Areas of every region present, one pass.
std::map<int, double> region_areas(const RegionalField& field, const Grid& grid);

/// Hausdorff distance: max of the two directed sup-inf Euclidean distances.
/// Throws std::invalid_argument when either set is empty.
double hausdorff(std::span<const Vec2> a, std::span<const Vec2> b);

/// Cell band over which error norms are evaluated: varphi < width_cells*h,
/// optionally intersected with disks of `near_radius` around `near_points`.
struct BandSpec {
    double width_cells = 10.0;
    std::vector<Vec2> near_points;
    double near_radius = 0.0;
};

struct ErrorNorms {
    double e1 = 0.0;    // band mean of |phi_n - phi_e|
    double einf = 0.0;  // band max
    int band_cells = 0;
};

/// Per-instant error contributions against an exact distance callable; the
/// caller accumulates sum(value * dt) over steps. Throws on an empty band.
ErrorNorms error_norms(const RegionalField& field, const Grid& grid,
                       const std::function<double(double, double)>& exact_distance,
                       const BandSpec& band);

}  // namespace rls
