#pragma once

#include "rls/grid.hpp"
#include "rls/regional.hpp"

namespace rls {

struct ReinitPlan {
    double dtau_factor = 0.5;  // pseudo-time step dtau = dtau_factor*h, <= 1/2 for stability
    int max_iters = 80;
    double tol = -1.0;         // convergence on band-max |update|; < 0 means 1e-3*h
    double band_cells = 12.0;  // cells with |phi| below band_cells*h drive convergence
    bool quiet = false;        // suppress the non-convergence warning
};

struct ReinitResult {
    int iterations = 0;
    double final_update = 0.0;
    bool converged = true;
};

/// Restores the distance-function property region by region: constructs each
/// region's signed field, iterates d(phi)/dtau = S(phi0)(1 - |grad phi|) with
/// smoothed sign S(phi0) = phi0/sqrt(phi0^2 + h^2) and Godunov upwinding until
/// the band-max update drops below tolerance, then reassembles the regional
/// field. The indicator field is never changed. Warns on stderr and keeps the
/// best iterate when an iteration limit is hit.
ReinitResult reinitialize(RegionalField& field, const Grid& grid, const BoundarySpec& bc,
                          const ReinitPlan& plan, const NarrowBand* band = nullptr);

}  // namespace rls
