#include "rls/grid.hpp"

#include <algorithm>
#include <cmath>

#include "rls/regional.hpp"

namespace rls {

int Grid::cell_of_x(double x) const {
    int i = static_cast<int>(std::floor((x - x0) / h));
    return std::clamp(i, -ghost, nx + ghost - 1);
}

int Grid::cell_of_y(double y) const {
    int j = static_cast<int>(std::floor((y - y0) / h));
    return std::clamp(j, -ghost, ny + ghost - 1);
}

Grid build_grid(int nx, int ny, double x0, double y0, double lx, double ly,
                const BoundarySpec& boundary, int ghost) {
    if (nx < 8 || ny < 8)
        throw std::invalid_argument("build_grid: need at least 8 cells per axis");
    if (ghost < 3)
        throw std::invalid_argument("build_grid: ghost layer narrower than stencil half-width 3");
    const double hx = lx / nx, hy = ly / ny;
    if (std::abs(hx - hy) > 1e-12 * std::max(hx, hy))
        throw std::invalid_argument("build_grid: non-square cells (lx/nx != ly/ny)");

    Grid g;
    g.nx = nx;
    g.ny = ny;
    g.x0 = x0;
    g.y0 = y0;
    g.lx = lx;
    g.ly = ly;
    g.h = hx;
    g.ghost = ghost;
    g.boundary = boundary;
    g.stride = nx + 2 * ghost;
    return g;
}

namespace {

// Source interior index for a ghost position on an axis of extent n.
inline int mirror_index(int i, int n) { return i < 0 ? -1 - i : 2 * n - 1 - i; }
inline int wrap_index(int i, int n) { return ((i % n) + n) % n; }

template <typename CopyFn>
void fill_ghost_layers(const Grid& g, const BoundarySpec& bc, CopyFn copy) {
    const int gh = g.ghost;
    // x ghosts for interior rows
    for (int j = 0; j < g.ny; ++j) {
        for (int k = 1; k <= gh; ++k) {
            const int il = -k, ir = g.nx - 1 + k;
            const int sl = bc.x == Boundary::Symmetry ? mirror_index(il, g.nx) : wrap_index(il, g.nx);
            const int sr = bc.x == Boundary::Symmetry ? mirror_index(ir, g.nx) : wrap_index(ir, g.nx);
            copy(g.idx(il, j), g.idx(sl, j));
            copy(g.idx(ir, j), g.idx(sr, j));
        }
    }
    // y ghosts for all columns, corners included
    for (int i = -gh; i < g.nx + gh; ++i) {
        for (int k = 1; k <= gh; ++k) {
            const int jb = -k, jt = g.ny - 1 + k;
            const int sb = bc.y == Boundary::Symmetry ? mirror_index(jb, g.ny) : wrap_index(jb, g.ny);
            const int st = bc.y == Boundary::Symmetry ? mirror_index(jt, g.ny) : wrap_index(jt, g.ny);
            copy(g.idx(i, jb), g.idx(i, sb));
            copy(g.idx(i, jt), g.idx(i, st));
        }
    }
}

}  // namespace

void fill_ghosts(RegionalField& field, const Grid& grid, const BoundarySpec& boundary) {
    fill_ghost_layers(grid, boundary, [&](int dst, int src) {
        field.varphi[dst] = field.varphi[src];
        field.chi[dst] = field.chi[src];
    });
}

void fill_ghosts(RegionalField& field, const Grid& grid) {
    fill_ghosts(field, grid, grid.boundary);
}

void fill_ghosts_scalar(std::vector<double>& a, const Grid& grid, const BoundarySpec& boundary) {
    fill_ghost_layers(grid, boundary, [&](int dst, int src) { a[dst] = a[src]; });
}

NarrowBand rebuild_narrow_band(const RegionalField& field, const Grid& grid, int k) {
    if (k < grid.ghost + 2)
        throw std::invalid_argument("rebuild_narrow_band: k < ghost + 2");

    NarrowBand band;
    band.k = k;
    band.mask.assign(grid.cell_count(), 0);

    const double threshold = k * grid.h;
    const int r = grid.ghost + 1;  // stencil closure radius
    std::vector<unsigned char> raw(grid.cell_count(), 0);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            if (field.varphi[grid.idx(i, j)] < threshold) raw[grid.idx(i, j)] = 1;

    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            bool active = false;
            for (int dj = -r; dj <= r && !active; ++dj) {
                const int jj = j + dj;
                if (jj < 0 || jj >= grid.ny) continue;
                for (int di = -r; di <= r; ++di) {
                    const int ii = i + di;
                    if (ii < 0 || ii >= grid.nx) continue;
                    if (raw[grid.idx(ii, jj)]) {
                        active = true;
                        break;
                    }
                }
            }
            if (active) {
                band.mask[grid.idx(i, j)] = 1;
                band.active.push_back(grid.idx(i, j));
            }
        }
    }
    return band;
}

}  // namespace rls
