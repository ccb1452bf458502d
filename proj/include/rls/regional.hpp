#pragma once

#include <array>
#include <span>
#include <vector>

#include "rls/grid.hpp"

namespace rls {

/// Per-cell pair (unsigned distance >= 0, positive integer region indicator).
/// The pair represents any number of regions with a single scalar field plus
/// labels; the interface network is the zero contour of the distance.
struct RegionalField {
    std::vector<double> varphi;
    std::vector<int> chi;

    RegionalField() = default;
    explicit RegionalField(const Grid& g)
        : varphi(g.cell_count(), 0.0), chi(g.cell_count(), 1) {}
};

/// Distinct indicators found in the 3x3 near neighborhood of a cell.
/// ids[0] is always the indicator at the center cell (the primary);
/// the rest follow in row-major first-occurrence order.
struct LocalIndexSet {
    std::array<int, 9> ids{};
    int count = 0;

    int primary() const { return ids[0]; }
    bool contains(int r) const {
        for (int m = 0; m < count; ++m)
            if (ids[m] == r) return true;
        return false;
    }
};

LocalIndexSet local_index_set(const RegionalField& field, const Grid& grid, int i, int j);

/// Signed level-set values for one region over an explicit list of cells.
struct LocalLevelSet {
    int chi_r = 0;
    std::vector<double> values;  // aligned with the cell list passed in
};

struct CellRef {
    int i, j;
};

/// Signs the unsigned distance: +varphi where chi == chi_r, -varphi elsewhere.
inline double signed_distance_value(double varphi, int chi, int chi_r) {
    return chi == chi_r ? varphi : -varphi;
}

/// Plain construction: per cell, +varphi inside region chi_r, -varphi outside.
LocalLevelSet construct_local(const RegionalField& field, const Grid& grid,
                              std::span<const CellRef> cells, int chi_r);

/// Clamped construction over the 3x3 neighborhood of (i,j): cells of region
/// chi_r keep the plain value; foreign cells get -min(h, d_s) where d_s is
/// the distance from the cell center to the zero contour of the plain field
/// inside the neighborhood (piecewise-linear crossings between cell centers).
/// Restores the signed-distance property near junctions. Throws if chi_r is
/// absent from the neighborhood.
LocalLevelSet construct_local_clamped(const RegionalField& field, const Grid& grid,
                                      int i, int j, int chi_r);

/// 3x3 patch builders used by geometry and transport. Row-major over
/// (dj,di) in {-1,0,1}^2; out[4] is the center cell.
void construct_patch3(const RegionalField& field, const Grid& grid, int i, int j,
                      int chi_r, double out[9]);
void construct_patch3_clamped(const RegionalField& field, const Grid& grid, int i, int j,
                              int chi_r, double out[9]);

enum class CellType { Full, TwoRegion, ComplexRegion };
enum class VsType { FullVs, TwoRegionVs, ComplexVs };

struct CellClass {
    CellType cell = CellType::Full;
    VsType vs = VsType::FullVs;
    int n_s = 1;  // distinct indicators in the 3x3 neighborhood
    int n_c = 1;  // regions whose zero contour crosses the cell boundary
};

/// Cell type from the number of local zero level sets crossing the cell:
/// bilinear interpolants are built from cell-corner values (each corner the
/// arithmetic mean of its four adjacent cell centers) and a region counts as
/// crossing when its corner values straddle zero.
CellClass classify_cell(const RegionalField& field, const Grid& grid, int i, int j);

struct Reconstructed {
    double varphi;
    int chi;
};

/// Maps candidate local level-set values at one point back to
/// (|max value|, indicator of the max). Ties pick the smallest indicator.
/// Throws std::invalid_argument on an empty candidate list.
Reconstructed reconstruct(std::span<const double> values, std::span<const int> indicators);

}  // namespace rls
