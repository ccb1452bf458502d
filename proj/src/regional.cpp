#include "rls/regional.hpp"

#include "rls/detail/patch_contour.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rls {

LocalIndexSet local_index_set(const RegionalField& field, const Grid& grid, int i, int j) {
    const int c0 = grid.idx(i, j);
    const int st = grid.stride;
    // row-major scan order of the 3x3 neighborhood
    const int off[9] = {-st - 1, -st, -st + 1, -1, 0, 1, st - 1, st, st + 1};

    LocalIndexSet xs;
    xs.ids[0] = field.chi[c0];
    xs.count = 1;
    for (int m = 0; m < 9; ++m) {
        const int c = field.chi[c0 + off[m]];
        bool seen = false;
        for (int q = 0; q < xs.count; ++q)
            if (xs.ids[q] == c) {
                seen = true;
                break;
            }
        if (!seen) xs.ids[xs.count++] = c;
    }
    return xs;
}

LocalLevelSet construct_local(const RegionalField& field, const Grid& grid,
                              std::span<const CellRef> cells, int chi_r) {
    LocalLevelSet out;
    out.chi_r = chi_r;
    out.values.reserve(cells.size());
    for (const CellRef& c : cells) {
        const int ix = grid.idx(c.i, c.j);
        out.values.push_back(signed_distance_value(field.varphi[ix], field.chi[ix], chi_r));
    }
    return out;
}

void construct_patch3(const RegionalField& field, const Grid& grid, int i, int j,
                      int chi_r, double out[9]) {
    int m = 0;
    for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di, ++m) {
            const int ix = grid.idx(i + di, j + dj);
            out[m] = signed_distance_value(field.varphi[ix], field.chi[ix], chi_r);
        }
}

namespace detail {

namespace {

double crossing(double a, double b) {
    const double d = a - b;
    return std::abs(d) < 1e-300 ? 0.5 : a / d;
}

}  // namespace

double point_segment_dist(double px, double py, const PatchSegment& s) {
    const double dx = s.bx - s.ax, dy = s.by - s.ay;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((px - s.ax) * dx + (py - s.ay) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double qx = s.ax + t * dx - px, qy = s.ay + t * dy - py;
    return std::sqrt(qx * qx + qy * qy);
}

// Zero-contour segments of the signed 3x3 patch, positions in units of h
// relative to the patch center. Membership (not the sign of possibly-zero
// values) decides where crossings exist.
int patch_contour_segments(const double p[9], const bool own[9], PatchSegment segs[8]) {
    int nseg = 0;
    for (int qj = 0; qj < 2; ++qj) {
        for (int qi = 0; qi < 2; ++qi) {
            // quad corners counterclockwise from lower-left
            const int c0 = qj * 3 + qi, c1 = qj * 3 + qi + 1, c2 = (qj + 1) * 3 + qi + 1,
                      c3 = (qj + 1) * 3 + qi;
            const int corner[4] = {c0, c1, c2, c3};
            const double cx[4] = {qi - 1.0, qi + 0.0, qi + 0.0, qi - 1.0};
            const double cy[4] = {qj - 1.0, qj - 1.0, qj + 0.0, qj + 0.0};

            int pattern = 0;
            for (int m = 0; m < 4; ++m)
                if (own[corner[m]]) pattern |= 1 << m;
            if (pattern == 0 || pattern == 15) continue;

            double ex[4], ey[4];
            bool cut[4];
            for (int e = 0; e < 4; ++e) {
                const int m0 = e, m1 = (e + 1) % 4;
                cut[e] = own[corner[m0]] != own[corner[m1]];
                if (cut[e]) {
                    const double t = crossing(p[corner[m0]], p[corner[m1]]);
                    ex[e] = cx[m0] + t * (cx[m1] - cx[m0]);
                    ey[e] = cy[m0] + t * (cy[m1] - cy[m0]);
                }
            }

            int cuts[4], ncut = 0;
            for (int e = 0; e < 4; ++e)
                if (cut[e]) cuts[ncut++] = e;

            if (ncut == 2) {
                segs[nseg++] = {ex[cuts[0]], ey[cuts[0]], ex[cuts[1]], ey[cuts[1]]};
            } else if (ncut == 4) {
                // saddle: pair crossings by the sign of the quad-center average
                const double center =
                    0.25 * (p[corner[0]] + p[corner[1]] + p[corner[2]] + p[corner[3]]);
                const bool center_own = center > 0.0;
                // corners 0 and 2 own (pattern 5) or 1 and 3 own (pattern 10)
                const bool own0 = own[corner[0]];
                if (own0 == center_own) {
                    segs[nseg++] = {ex[0], ey[0], ex[1], ey[1]};
                    segs[nseg++] = {ex[2], ey[2], ex[3], ey[3]};
                } else {
                    segs[nseg++] = {ex[3], ey[3], ex[0], ey[0]};
                    segs[nseg++] = {ex[1], ey[1], ex[2], ey[2]};
                }
            }
        }
    }
    return nseg;
}

}  // namespace detail

void construct_patch3_clamped(const RegionalField& field, const Grid& grid, int i, int j,
                              int chi_r, double out[9]) {
    bool own[9];
    bool any_own = false, any_foreign = false;
    int m = 0;
    for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di, ++m) {
            const int ix = grid.idx(i + di, j + dj);
            own[m] = field.chi[ix] == chi_r;
            out[m] = signed_distance_value(field.varphi[ix], field.chi[ix], chi_r);
            (own[m] ? any_own : any_foreign) = true;
        }
    if (!any_own)
        throw std::invalid_argument("construct_local_clamped: region absent from neighborhood");
    if (!any_foreign) return;  // single-region patch, nothing to clamp

    detail::PatchSegment segs[8];
    const int nseg = detail::patch_contour_segments(out, own, segs);

    m = 0;
    for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di, ++m) {
            if (own[m]) continue;
            double ds = 1e300;
            for (int s = 0; s < nseg; ++s)
                ds = std::min(ds, detail::point_segment_dist(di, dj, segs[s]));
            out[m] = -std::min(1.0, ds) * grid.h;
        }
}

LocalLevelSet construct_local_clamped(const RegionalField& field, const Grid& grid,
                                      int i, int j, int chi_r) {
    double patch[9];
    construct_patch3_clamped(field, grid, i, j, chi_r, patch);
    LocalLevelSet out;
    out.chi_r = chi_r;
    out.values.assign(patch, patch + 9);
    return out;
}

CellClass classify_cell(const RegionalField& field, const Grid& grid, int i, int j) {
    CellClass cc;
    const LocalIndexSet xs = local_index_set(field, grid, i, j);
    cc.n_s = xs.count;
    cc.vs = xs.count == 1   ? VsType::FullVs
            : xs.count == 2 ? VsType::TwoRegionVs
                            : VsType::ComplexVs;
    if (xs.count == 1) {
        cc.n_c = 1;
        cc.cell = CellType::Full;
        return cc;
    }

    // Cell-corner values of each constructed field: the mean of the four
    // adjacent cell centers. A region crosses the cell when its bilinear
    // corner values straddle zero.
    int crossing_count = 0;
    for (int r = 0; r < xs.count; ++r) {
        double cmin = 1e300, cmax = -1e300;
        for (int cj = 0; cj <= 1; ++cj) {
            for (int ci = 0; ci <= 1; ++ci) {
                double sum = 0.0;
                for (int dj = cj - 1; dj <= cj; ++dj)
                    for (int di = ci - 1; di <= ci; ++di) {
                        const int ix = grid.idx(i + di, j + dj);
                        sum += signed_distance_value(field.varphi[ix], field.chi[ix], xs.ids[r]);
                    }
                const double corner = 0.25 * sum;
                cmin = std::min(cmin, corner);
                cmax = std::max(cmax, corner);
            }
        }
        if (cmin <= 0.0 && cmax >= 0.0) ++crossing_count;
    }
    cc.n_c = std::max(crossing_count, 1);
    cc.cell = crossing_count <= 1   ? CellType::Full
              : crossing_count == 2 ? CellType::TwoRegion
                                    : CellType::ComplexRegion;
    return cc;
}

Reconstructed reconstruct(std::span<const double> values, std::span<const int> indicators) {
    if (values.empty() || values.size() != indicators.size())
        throw std::invalid_argument("reconstruct: empty or mismatched candidate list");
    double best = values[0];
    int best_chi = indicators[0];
    for (std::size_t m = 1; m < values.size(); ++m) {
        if (values[m] > best || (values[m] == best && indicators[m] < best_chi)) {
            best = values[m];
            best_chi = indicators[m];
        }
    }
    return {std::abs(best), best_chi};
}

}  // namespace rls
