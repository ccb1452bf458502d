#include "rls/reinit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <vector>

namespace rls {

namespace {

inline double sq(double x) { return x * x; }

// Godunov upwind |grad phi| from first-order one-sided differences,
// oriented by the initial sign.
inline double godunov_grad(double a, double b, double c, double d, double sign0) {
    double gx2, gy2;
    if (sign0 > 0.0) {
        gx2 = std::max(sq(std::max(a, 0.0)), sq(std::min(b, 0.0)));
        gy2 = std::max(sq(std::max(c, 0.0)), sq(std::min(d, 0.0)));
    } else {
        gx2 = std::max(sq(std::min(a, 0.0)), sq(std::max(b, 0.0)));
        gy2 = std::max(sq(std::min(c, 0.0)), sq(std::max(d, 0.0)));
    }
    return std::sqrt(gx2 + gy2);
}

}  // namespace

ReinitResult reinitialize(RegionalField& field, const Grid& grid, const BoundarySpec& bc,
                          const ReinitPlan& plan, const NarrowBand* band) {
    ReinitResult result;
    fill_ghosts(field, grid, bc);

    std::set<int> regions;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) regions.insert(field.chi[grid.idx(i, j)]);
    if (regions.size() < 2) return result;  // no interface, nothing to repair

    const double h = grid.h;
    const double dtau = plan.dtau_factor * h;
    const double tol = plan.tol > 0.0 ? plan.tol : 1e-3 * h;
    const double band_width = plan.band_cells * h;
    // repair zone: wide enough that inputs stretched by a factor ~2.5 still
    // relax everywhere the band check looks
    const double update_width = (2.5 * plan.band_cells + 2.0) * h;

    const int count = grid.cell_count();
    std::map<int, std::vector<double>> per_region;

    std::vector<double> psi(count), psi0(count), smoothed_sign(count), next(count);
    for (int r : regions) {
        for (int ix = 0; ix < count; ++ix)
            psi[ix] = signed_distance_value(field.varphi[ix], field.chi[ix], r);
        psi0 = psi;
        for (int ix = 0; ix < count; ++ix)
            smoothed_sign[ix] = psi0[ix] / std::sqrt(sq(psi0[ix]) + h * h);
        // cells straddling the zero contour are anchored to the sub-cell
        // distance implied by the initial crossing, which keeps the contour
        // from drifting and makes exact distance input a fixed point.
        // Junction neighborhoods are left un-anchored: the corner rounding of
        // the plain iteration is what lets a multiple junction relax.
        std::vector<unsigned char> straddle(count, 0);
        std::vector<double> anchor(count, 0.0);
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                const int ix = grid.idx(i, j);
                const double s0 = psi0[ix];
                if (s0 * psi0[grid.idx(i - 1, j)] < 0.0 ||
                    s0 * psi0[grid.idx(i + 1, j)] < 0.0 ||
                    s0 * psi0[grid.idx(i, j - 1)] < 0.0 ||
                    s0 * psi0[grid.idx(i, j + 1)] < 0.0) {
                    if (local_index_set(field, grid, i, j).count >= 3) continue;
                    straddle[ix] = 1;
                    // sub-cell perpendicular distance: per-axis slopes from
                    // the differences across the crossing where one exists
                    // (robust under compression and for thin features),
                    // central differences elsewhere
                    auto axis_slope = [&](int lo, int hi) {
                        const double dl = s0 - psi0[lo], dh = psi0[hi] - s0;
                        const bool sl = s0 * psi0[lo] < 0.0, sh = s0 * psi0[hi] < 0.0;
                        if (sl && sh) return std::max(std::abs(dl), std::abs(dh)) / h;
                        if (sl) return std::abs(dl) / h;
                        if (sh) return std::abs(dh) / h;
                        return std::abs(psi0[hi] - psi0[lo]) / (2.0 * h);
                    };
                    const double gx = axis_slope(grid.idx(i - 1, j), grid.idx(i + 1, j));
                    const double gy = axis_slope(grid.idx(i, j - 1), grid.idx(i, j + 1));
                    const double slope = std::max(std::sqrt(gx * gx + gy * gy), 1e-12);
                    anchor[ix] = std::clamp(psi0[ix] / slope, -h, h);
                }
            }

        int iter = 0;
        double max_update = 0.0;
        bool converged = false;
        for (; iter < plan.max_iters; ++iter) {
            max_update = 0.0;
            next = psi;
            auto relax = [&](int i, int j) {
                const int ix = grid.idx(i, j);
                if (std::abs(psi0[ix]) >= update_width) return;
                double upd;
                if (straddle[ix]) {
                    const double sgn = psi0[ix] >= 0.0 ? 1.0 : -1.0;
                    upd = -(dtau / h) * (sgn * std::abs(psi[ix]) - anchor[ix]);
                } else {
                    const double a = (psi[ix] - psi[grid.idx(i - 1, j)]) / h;
                    const double b = (psi[grid.idx(i + 1, j)] - psi[ix]) / h;
                    const double c = (psi[ix] - psi[grid.idx(i, j - 1)]) / h;
                    const double d = (psi[grid.idx(i, j + 1)] - psi[ix]) / h;
                    const double g = godunov_grad(a, b, c, d, psi0[ix]);
                    upd = -dtau * smoothed_sign[ix] * (g - 1.0);
                }
                next[ix] = psi[ix] + upd;
                // convergence is judged on the cells the reassembly reads:
                // this region's own side of the band (foreign far-side values
                // are never selected by the reconstruction) plus the anchored
                // interface ring
                if ((straddle[ix] || field.chi[ix] == r) && psi[ix] < band_width)
                    max_update = std::max(max_update, std::abs(upd));
            };
            if (band) {
                for (int ix : band->active) {
                    const int j = ix / grid.stride - grid.ghost;
                    const int i = ix % grid.stride - grid.ghost;
                    relax(i, j);
                }
            } else {
                for (int j = 0; j < grid.ny; ++j)
                    for (int i = 0; i < grid.nx; ++i) relax(i, j);
            }
            std::swap(psi, next);
            fill_ghosts_scalar(psi, grid, bc);
            if (max_update < tol) {
                converged = true;
                ++iter;
                break;
            }
        }
        if (!converged && !plan.quiet) {
            std::fprintf(stderr,
                         "reinitialize: region %d not converged after %d iterations "
                         "(last update %.3e, tol %.3e); keeping best iterate\n",
                         r, iter, max_update, tol);
        }
        if (!converged) result.converged = false;
        result.iterations = std::max(result.iterations, iter);
        result.final_update = std::max(result.final_update, max_update);
        per_region[r] = psi;
    }

    // Reassemble: argmax over the repaired signed fields; the indicator is
    // never changed, so a cell whose own contour drifted past its center
    // keeps its region with the magnitude of its own field.
    std::vector<double> vals(regions.size());
    std::vector<int> ids(regions.begin(), regions.end());
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const int ix = grid.idx(i, j);
            for (std::size_t m = 0; m < ids.size(); ++m) vals[m] = per_region[ids[m]][ix];
            const Reconstructed rec = reconstruct(vals, ids);
            if (rec.chi == field.chi[ix])
                field.varphi[ix] = rec.varphi;
            else
                field.varphi[ix] = std::abs(per_region[field.chi[ix]][ix]);
        }
    }
    fill_ghosts(field, grid, bc);
    return result;
}

}  // namespace rls
