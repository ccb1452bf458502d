#include "rls/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rls {

double norm(Vec2 a) { return std::sqrt(a.x * a.x + a.y * a.y); }
double dist(Vec2 a, Vec2 b) { return norm(a - b); }

double InterfaceGraph::total_length() const {
    double len = 0.0;
    for (const Segment& s : segments) len += dist(s.a, s.b);
    return len;
}

double InterfaceGraph::pair_length(int ra, int rb) const {
    if (ra > rb) std::swap(ra, rb);
    double len = 0.0;
    for (const Segment& s : segments)
        if (s.ra == ra && s.rb == rb) len += dist(s.a, s.b);
    return len;
}

namespace {

void sample_segment(const Segment& s, double spacing, std::vector<Vec2>& out) {
    const double len = dist(s.a, s.b);
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    for (int k = 0; k <= pieces; ++k) {
        const double t = static_cast<double>(k) / pieces;
        out.push_back(s.a + t * (s.b - s.a));
    }
}

}  // namespace

std::vector<Vec2> InterfaceGraph::sample(double spacing) const {
    std::vector<Vec2> out;
    for (const Segment& s : segments) sample_segment(s, spacing, out);
    return out;
}

std::vector<Vec2> InterfaceGraph::sample_pair(int ra, int rb, double spacing) const {
    if (ra > rb) std::swap(ra, rb);
    std::vector<Vec2> out;
    for (const Segment& s : segments)
        if (s.ra == ra && s.rb == rb) sample_segment(s, spacing, out);
    return out;
}

std::vector<int> InterfaceGraph::neighbors_of(int region, double min_total_length) const {
    std::map<int, double> lengths;
    for (const Segment& s : segments) {
        if (s.ra == region) lengths[s.rb] += dist(s.a, s.b);
        else if (s.rb == region) lengths[s.ra] += dist(s.a, s.b);
    }
    std::vector<int> out;
    for (const auto& [r, len] : lengths)
        if (len > min_total_length) out.push_back(r);
    return out;
}

GeometryAtCell normal_curvature3(const double p[9], double h) {
    GeometryAtCell g;
    const double px = (p[5] - p[3]) / (2.0 * h);
    const double py = (p[7] - p[1]) / (2.0 * h);
    const double g2 = px * px + py * py;
    if (std::sqrt(g2) < 1e-9) {
        g.degenerate = true;
        return g;
    }
    const double pxx = (p[5] - 2.0 * p[4] + p[3]) / (h * h);
    const double pyy = (p[7] - 2.0 * p[4] + p[1]) / (h * h);
    const double pxy = (p[8] - p[6] - p[2] + p[0]) / (4.0 * h * h);
    const double inv = 1.0 / std::sqrt(g2);
    g.n = {px * inv, py * inv};
    // divergence of n, negated so a disk-shaped positive region has kappa = +1/r
    // and shrinks under u = kappa*n
    g.kappa = -(pxx * py * py - 2.0 * px * py * pxy + pyy * px * px) / (g2 * std::sqrt(g2));
    return g;
}

GeometryAtCell normal_curvature(const std::array<double, 25>& patch, double h) {
    // derivatives need only the central 3x3 of the 5x5 patch
    const double p[9] = {patch[6],  patch[7],  patch[8], patch[11], patch[12],
                         patch[13], patch[16], patch[17], patch[18]};
    return normal_curvature3(p, h);
}

namespace {

// Per-corner data: candidate regions of the four adjacent cells with the
// corner-averaged constructed values; winner is the argmax (ties -> smaller
// indicator), matching the reconstruction decision at the corner.
struct CornerData {
    int regions[4];
    double values[4];
    int count = 0;
    int winner = 0;
    double winner_value = 0.0;
    double foreign_avg = 0.0;  // corner value of any region absent from the four cells

    double value_of(int r) const {
        for (int m = 0; m < count; ++m)
            if (regions[m] == r) return values[m];
        return foreign_avg;
    }
};

CornerData corner_data(const RegionalField& f, const Grid& g, int ci, int cj) {
    // corner (ci,cj) touches cells (ci-1..ci, cj-1..cj)
    CornerData d;
    int cells[4];
    cells[0] = g.idx(ci - 1, cj - 1);
    cells[1] = g.idx(ci, cj - 1);
    cells[2] = g.idx(ci - 1, cj);
    cells[3] = g.idx(ci, cj);
    double vsum = 0.0;
    for (int m = 0; m < 4; ++m) vsum += f.varphi[cells[m]];
    d.foreign_avg = -0.25 * vsum;

    for (int m = 0; m < 4; ++m) {
        const int r = f.chi[cells[m]];
        bool seen = false;
        for (int q = 0; q < d.count; ++q)
            if (d.regions[q] == r) seen = true;
        if (seen) continue;
        double v = 0.0;
        for (int q = 0; q < 4; ++q)
            v += f.chi[cells[q]] == r ? f.varphi[cells[q]] : -f.varphi[cells[q]];
        d.regions[d.count] = r;
        d.values[d.count] = 0.25 * v;
        ++d.count;
    }
    d.winner = d.regions[0];
    d.winner_value = d.values[0];
    for (int m = 1; m < d.count; ++m) {
        if (d.values[m] > d.winner_value ||
            (d.values[m] == d.winner_value && d.regions[m] < d.winner)) {
            d.winner = d.regions[m];
            d.winner_value = d.values[m];
        }
    }
    return d;
}

struct EdgeCrossing {
    int edge;       // 0 SW-SE, 1 SE-NE, 2 NE-NW, 3 NW-SW
    Vec2 p;
    int ra, rb;     // winner pair across the crossing, ra < rb
};

inline double pair_psi(const CornerData& c, int ra, int rb) {
    return 0.5 * (c.value_of(ra) - c.value_of(rb));
}

// Chord of the pairwise field's zero contour inside the cell spanned by
// corners (positions in cell-local coordinates), or nullopt.
std::optional<std::pair<Vec2, Vec2>> pair_chord(const CornerData corner[4], const Vec2 pos[4],
                                                int ra, int rb) {
    double psi[4];
    for (int m = 0; m < 4; ++m) psi[m] = pair_psi(corner[m], ra, rb);
    Vec2 pts[4];
    int npts = 0;
    for (int e = 0; e < 4; ++e) {
        const int m0 = e, m1 = (e + 1) % 4;
        if ((psi[m0] > 0.0) != (psi[m1] > 0.0)) {
            const double denom = psi[m0] - psi[m1];
            const double t = std::abs(denom) < 1e-300 ? 0.5 : psi[m0] / denom;
            if (npts < 4) pts[npts++] = pos[m0] + t * (pos[m1] - pos[m0]);
        }
    }
    if (npts < 2) return std::nullopt;
    return std::make_pair(pts[0], pts[1]);
}

std::optional<Vec2> line_intersection(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    const double dax = a1.x - a0.x, day = a1.y - a0.y;
    const double dbx = b1.x - b0.x, dby = b1.y - b0.y;
    const double det = dax * dby - day * dbx;
    if (std::abs(det) < 1e-14) return std::nullopt;
    const double t = ((b0.x - a0.x) * dby - (b0.y - a0.y) * dbx) / det;
    return Vec2{a0.x + t * dax, a0.y + t * day};
}

}  // namespace

InterfaceGraph extract_interface(const RegionalField& field, const Grid& grid) {
    InterfaceGraph graph;
    std::vector<Vec2> raw_junctions;

    // corner winners over the (nx+1) x (ny+1) lattice
    const int cw = grid.nx + 1;
    std::vector<int> winner((grid.nx + 1) * (grid.ny + 1));
    for (int cj = 0; cj <= grid.ny; ++cj)
        for (int ci = 0; ci <= grid.nx; ++ci)
            winner[cj * cw + ci] = corner_data(field, grid, ci, cj).winner;

    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            // corners cyclic SW, SE, NE, NW
            const int wsw = winner[j * cw + i], wse = winner[j * cw + i + 1];
            const int wne = winner[(j + 1) * cw + i + 1], wnw = winner[(j + 1) * cw + i];
            if (wsw == wse && wse == wne && wne == wnw) continue;

            const int cidx[4][2] = {{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}};
            CornerData corner[4];
            for (int m = 0; m < 4; ++m)
                corner[m] = corner_data(field, grid, cidx[m][0], cidx[m][1]);
            const Vec2 pos[4] = {{grid.x0 + i * grid.h, grid.y0 + j * grid.h},
                                 {grid.x0 + (i + 1) * grid.h, grid.y0 + j * grid.h},
                                 {grid.x0 + (i + 1) * grid.h, grid.y0 + (j + 1) * grid.h},
                                 {grid.x0 + i * grid.h, grid.y0 + (j + 1) * grid.h}};
            const int w[4] = {wsw, wse, wne, wnw};

            int distinct[4], ndistinct = 0;
            for (int m = 0; m < 4; ++m) {
                bool seen = false;
                for (int q = 0; q < ndistinct; ++q)
                    if (distinct[q] == w[m]) seen = true;
                if (!seen) distinct[ndistinct++] = w[m];
            }

            EdgeCrossing cross[4];
            int ncross = 0;
            for (int e = 0; e < 4; ++e) {
                const int m0 = e, m1 = (e + 1) % 4;
                if (w[m0] == w[m1]) continue;
                const double p0 = pair_psi(corner[m0], w[m0], w[m1]);
                const double p1 = pair_psi(corner[m1], w[m0], w[m1]);
                const double denom = p0 - p1;
                const double t = std::abs(denom) < 1e-300 ? 0.5 : std::clamp(p0 / denom, 0.0, 1.0);
                EdgeCrossing& c = cross[ncross++];
                c.edge = e;
                c.p = pos[m0] + t * (pos[m1] - pos[m0]);
                c.ra = std::min(w[m0], w[m1]);
                c.rb = std::max(w[m0], w[m1]);
            }

            auto push_segment = [&](Vec2 a, Vec2 b, int ra, int rb) {
                if (dist(a, b) < 1e-14) return;
                graph.segments.push_back({a, b, std::min(ra, rb), std::max(ra, rb)});
            };

            if (ndistinct == 2) {
                if (ncross == 2) {
                    push_segment(cross[0].p, cross[1].p, cross[0].ra, cross[0].rb);
                } else if (ncross == 4) {
                    // saddle: connect by the sign of the pairwise field at the center
                    const int ra = std::min(distinct[0], distinct[1]);
                    const int rb = std::max(distinct[0], distinct[1]);
                    double center = 0.0;
                    for (int m = 0; m < 4; ++m) center += 0.25 * pair_psi(corner[m], ra, rb);
                    const bool c0_pos = pair_psi(corner[0], ra, rb) > 0.0;
                    if ((center > 0.0) == c0_pos) {
                        push_segment(cross[0].p, cross[1].p, ra, rb);
                        push_segment(cross[2].p, cross[3].p, ra, rb);
                    } else {
                        push_segment(cross[3].p, cross[0].p, ra, rb);
                        push_segment(cross[1].p, cross[2].p, ra, rb);
                    }
                }
            } else if (ncross >= 3) {
                // junction cell: meet point of the pairwise contours
                std::optional<Vec2> jpt;
                const auto chord_a = pair_chord(corner, pos, distinct[0], distinct[1]);
                const auto chord_b = pair_chord(corner, pos, distinct[1], distinct[2]);
                if (chord_a && chord_b)
                    jpt = line_intersection(chord_a->first, chord_a->second, chord_b->first,
                                            chord_b->second);
                const bool inside = jpt && jpt->x >= pos[0].x - 1e-12 &&
                                    jpt->x <= pos[1].x + 1e-12 && jpt->y >= pos[0].y - 1e-12 &&
                                    jpt->y <= pos[2].y + 1e-12;
                if (!inside) {
                    Vec2 centroid{0.0, 0.0};
                    for (int m = 0; m < ncross; ++m) centroid = centroid + cross[m].p;
                    jpt = (1.0 / ncross) * centroid;
                }
                raw_junctions.push_back(*jpt);
                for (int m = 0; m < ncross; ++m)
                    push_segment(cross[m].p, *jpt, cross[m].ra, cross[m].rb);
            }
        }
    }

    // merge junction estimates closer than 1.5h
    const double merge_r = 1.5 * grid.h;
    std::vector<bool> used(raw_junctions.size(), false);
    for (std::size_t a = 0; a < raw_junctions.size(); ++a) {
        if (used[a]) continue;
        Vec2 sum = raw_junctions[a];
        int cnt = 1;
        used[a] = true;
        for (std::size_t b = a + 1; b < raw_junctions.size(); ++b) {
            if (!used[b] && dist(raw_junctions[a], raw_junctions[b]) < merge_r) {
                sum = sum + raw_junctions[b];
                used[b] = true;
                ++cnt;
            }
        }
        graph.junctions.push_back((1.0 / cnt) * sum);
    }
    return graph;
}

namespace {

double shoelace(const std::vector<Vec2>& poly) {
    double a = 0.0;
    for (std::size_t m = 0; m < poly.size(); ++m) {
        const Vec2& p = poly[m];
        const Vec2& q = poly[(m + 1) % poly.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * std::abs(a);
}

// Bilinear values of every candidate region at an arbitrary point of the
// cell, from the four corner data sets.
struct CellPatch {
    CornerData corner[4];  // SW, SE, NE, NW
    Vec2 pos[4];

    int winner_at(double fx, double fy) const {
        // candidates: union of corner candidates
        int regions[16];
        int nregions = 0;
        for (int m = 0; m < 4; ++m)
            for (int q = 0; q < corner[m].count; ++q) {
                const int r = corner[m].regions[q];
                bool seen = false;
                for (int s = 0; s < nregions; ++s)
                    if (regions[s] == r) seen = true;
                if (!seen) regions[nregions++] = r;
            }
        const double wgt[4] = {(1.0 - fx) * (1.0 - fy), fx * (1.0 - fy), fx * fy,
                               (1.0 - fx) * fy};
        int best = 0;
        double best_v = -1e301;
        for (int s = 0; s < nregions; ++s) {
            double v = 0.0;
            for (int m = 0; m < 4; ++m) v += wgt[m] * corner[m].value_of(regions[s]);
            if (v > best_v || (v == best_v && regions[s] < best)) {
                best_v = v;
                best = regions[s];
            }
        }
        return best;
    }
};

// Area of each winner region inside the sub-rectangle [fx0,fx1]x[fy0,fy1]
// (cell-local fractions) by recursive splitting; simple sub-rectangles are
// finished by the chord rule.
void subcell_areas(const CellPatch& patch, double fx0, double fy0, double fx1, double fy1,
                   double cell_area, int depth, std::map<int, double>& areas) {
    const double fx[4] = {fx0, fx1, fx1, fx0};
    const double fy[4] = {fy0, fy0, fy1, fy1};
    int w[4];
    for (int m = 0; m < 4; ++m) w[m] = patch.winner_at(fx[m], fy[m]);

    const double rect_area = cell_area * (fx1 - fx0) * (fy1 - fy0);
    if (w[0] == w[1] && w[1] == w[2] && w[2] == w[3]) {
        areas[w[0]] += rect_area;
        return;
    }
    if (depth >= 5) {
        areas[patch.winner_at(0.5 * (fx0 + fx1), 0.5 * (fy0 + fy1))] += rect_area;
        return;
    }
    const double mx = 0.5 * (fx0 + fx1), my = 0.5 * (fy0 + fy1);
    subcell_areas(patch, fx0, fy0, mx, my, cell_area, depth + 1, areas);
    subcell_areas(patch, mx, fy0, fx1, my, cell_area, depth + 1, areas);
    subcell_areas(patch, fx0, my, mx, fy1, cell_area, depth + 1, areas);
    subcell_areas(patch, mx, my, fx1, fy1, cell_area, depth + 1, areas);
}

}  // namespace

std::map<int, double> region_areas(const RegionalField& field, const Grid& grid) {
    std::map<int, double> areas;
    const double h2 = grid.h * grid.h;

    const int cw = grid.nx + 1;
    std::vector<int> winner((grid.nx + 1) * (grid.ny + 1));
    for (int cj = 0; cj <= grid.ny; ++cj)
        for (int ci = 0; ci <= grid.nx; ++ci)
            winner[cj * cw + ci] = corner_data(field, grid, ci, cj).winner;

    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const int w[4] = {winner[j * cw + i], winner[j * cw + i + 1],
                              winner[(j + 1) * cw + i + 1], winner[(j + 1) * cw + i]};
            if (w[0] == w[1] && w[1] == w[2] && w[2] == w[3]) {
                areas[w[0]] += h2;
                continue;
            }

            const int cidx[4][2] = {{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}};
            CellPatch patch;
            for (int m = 0; m < 4; ++m)
                patch.corner[m] = corner_data(field, grid, cidx[m][0], cidx[m][1]);
            patch.pos[0] = {grid.x0 + i * grid.h, grid.y0 + j * grid.h};
            patch.pos[1] = {grid.x0 + (i + 1) * grid.h, grid.y0 + j * grid.h};
            patch.pos[2] = {grid.x0 + (i + 1) * grid.h, grid.y0 + (j + 1) * grid.h};
            patch.pos[3] = {grid.x0 + i * grid.h, grid.y0 + (j + 1) * grid.h};

            // chord split when exactly two winners and two crossings
            int ndistinct = 0;
            int distinct[4];
            for (int m = 0; m < 4; ++m) {
                bool seen = false;
                for (int q = 0; q < ndistinct; ++q)
                    if (distinct[q] == w[m]) seen = true;
                if (!seen) distinct[ndistinct++] = w[m];
            }
            int ncross = 0;
            for (int e = 0; e < 4; ++e)
                if (w[e] != w[(e + 1) % 4]) ++ncross;

            if (ndistinct == 2 && ncross == 2) {
                // boundary walk: polygon of each winner on its side of the chord
                std::vector<Vec2> poly[2];
                for (int e = 0; e < 4; ++e) {
                    const int m0 = e, m1 = (e + 1) % 4;
                    const int side = w[m0] == distinct[0] ? 0 : 1;
                    poly[side].push_back(patch.pos[m0]);
                    if (w[m0] != w[m1]) {
                        const double p0 = pair_psi(patch.corner[m0], w[m0], w[m1]);
                        const double p1 = pair_psi(patch.corner[m1], w[m0], w[m1]);
                        const double denom = p0 - p1;
                        const double t =
                            std::abs(denom) < 1e-300 ? 0.5 : std::clamp(p0 / denom, 0.0, 1.0);
                        const Vec2 c = patch.pos[m0] + t * (patch.pos[m1] - patch.pos[m0]);
                        poly[0].push_back(c);
                        poly[1].push_back(c);
                    }
                }
                const double a0 = shoelace(poly[0]);
                areas[distinct[0]] += a0;
                areas[distinct[1]] += h2 - a0;
            } else {
                subcell_areas(patch, 0.0, 0.0, 1.0, 1.0, h2, 0, areas);
            }
        }
    }
    return areas;
}

double region_area(const RegionalField& field, const Grid& grid, int chi) {
    const auto areas = region_areas(field, grid);
    const auto it = areas.find(chi);
    return it == areas.end() ? 0.0 : it->second;
}

double hausdorff(std::span<const Vec2> a, std::span<const Vec2> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("hausdorff: empty point set");

    auto directed = [](std::span<const Vec2> from, std::span<const Vec2> to) {
        double worst2 = 0.0;
        for (const Vec2& p : from) {
            double best2 = 1e300;
            for (const Vec2& q : to) {
                const double dx = p.x - q.x, dy = p.y - q.y;
                const double d2 = dx * dx + dy * dy;
                if (d2 < best2) {
                    best2 = d2;
                    if (best2 <= worst2) break;  // cannot raise the max
                }
            }
            if (best2 > worst2) worst2 = best2;
        }
        return std::sqrt(worst2);
    };
    return std::max(directed(a, b), directed(b, a));
}

ErrorNorms error_norms(const RegionalField& field, const Grid& grid,
                       const std::function<double(double, double)>& exact_distance,
                       const BandSpec& band) {
    ErrorNorms en;
    const double threshold = band.width_cells * grid.h;
    double sum = 0.0;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const int ix = grid.idx(i, j);
            if (field.varphi[ix] >= threshold) continue;
            if (!band.near_points.empty()) {
                bool near = false;
                for (const Vec2& p : band.near_points) {
                    const double dx = grid.xc(i) - p.x, dy = grid.yc(j) - p.y;
                    if (dx * dx + dy * dy < band.near_radius * band.near_radius) {
                        near = true;
                        break;
                    }
                }
                if (!near) continue;
            }
            const double err = std::abs(field.varphi[ix] - exact_distance(grid.xc(i), grid.yc(j)));
            sum += err;
            en.einf = std::max(en.einf, err);
            ++en.band_cells;
        }
    }
    if (en.band_cells == 0)
        throw std::runtime_error("error_norms: empty band");
    en.e1 = sum / en.band_cells;
    return en;
}

}  // namespace rls
