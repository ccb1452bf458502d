#pragma once

#include <stdexcept>
#include <vector>

namespace rls {

struct RegionalField;

enum class Boundary { Symmetry, Periodic };

struct BoundarySpec {
    Boundary x = Boundary::Symmetry;
    Boundary y = Boundary::Symmetry;
};

/// Uniform 2D Cartesian grid with a ghost layer around the interior cells.
/// Interior cells carry indices i in [0,nx), j in [0,ny); ghost cells extend
/// these ranges by `ghost` on each side.
struct Grid {
    int nx = 0, ny = 0;
    double x0 = 0.0, y0 = 0.0;
    double lx = 1.0, ly = 1.0;
    double h = 0.0;
    int ghost = 3;
    BoundarySpec boundary;

    int stride = 0;  // cells per padded row, nx + 2*ghost

    int idx(int i, int j) const { return (j + ghost) * stride + (i + ghost); }
    double xc(int i) const { return x0 + (i + 0.5) * h; }
    double yc(int j) const { return y0 + (j + 0.5) * h; }
    int cell_count() const { return stride * (ny + 2 * ghost); }
    int interior_count() const { return nx * ny; }
    bool in_interior(int i, int j) const {
        return i >= 0 && i < nx && j >= 0 && j < ny;
    }
    // Cell containing point (x,y); clamped to the padded index range.
    int cell_of_x(double x) const;
    int cell_of_y(double y) const;
};

/// Builds a grid with square cells. Throws std::invalid_argument for
/// non-square cells, ghost layers narrower than the widest stencil
/// half-width (3), or fewer than 8 cells per axis.
Grid build_grid(int nx, int ny, double x0, double y0, double lx, double ly,
                const BoundarySpec& boundary, int ghost = 3);

/// Populates the ghost layers of both the distance and the indicator so that
/// every interior stencil evaluation is defined. Symmetry mirrors values
/// across the wall (indicators are copied, never negated); Periodic wraps.
void fill_ghosts(RegionalField& field, const Grid& grid, const BoundarySpec& boundary);
void fill_ghosts(RegionalField& field, const Grid& grid);

/// Ghost fill for a plain scalar array laid out like a field component.
void fill_ghosts_scalar(std::vector<double>& a, const Grid& grid, const BoundarySpec& boundary);

/// Set of active cells for banded transport.
struct NarrowBand {
    int k = 0;                       // bandwidth in cells
    std::vector<int> active;         // linear indices of active interior cells
    std::vector<unsigned char> mask; // cell_count() sized membership flags

    bool is_active(int linear_idx) const { return mask[linear_idx] != 0; }
    bool empty() const { return active.empty(); }
};

/// Active set = {cells with varphi < k*h} dilated by ghost+1 cells so every
/// stencil read of a band cell stays inside refreshed data. Requires
/// k >= ghost + 2.
NarrowBand rebuild_narrow_band(const RegionalField& field, const Grid& grid, int k);

}  // namespace rls
