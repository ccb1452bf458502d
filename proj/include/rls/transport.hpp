#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "rls/geometry.hpp"
#include "rls/grid.hpp"
#include "rls/regional.hpp"
#include "rls/schemes.hpp"

namespace rls {

/// Velocity model evaluated at cell centers, per region when geometry-driven.
struct VelocitySpec {
    enum class Kind { Uniform, Rotation, SingleVortex, Radial, MeanCurvature, NormalDriven };

    Kind kind = Kind::Uniform;
    double vx = 0.0, vy = 0.0;         // Uniform
    Vec2 center{0.5, 0.5};             // Rotation / Radial
    double omega = 1.0;                // Rotation rate
    double speed = 1.0;                // Radial expansion speed
    double reversal_time = 3.0;        // SingleVortex: negated field for t >= reversal_time
    double gamma = 1.0;                // MeanCurvature mobility

    bool geometry_driven() const {
        return kind == Kind::MeanCurvature || kind == Kind::NormalDriven;
    }
    bool curvature_limited() const { return kind == Kind::MeanCurvature; }
};

/// Which construction feeds geometry-driven velocity evaluation.
enum class ConstructOp { Plain, Clamped };

struct StepPlan {
    std::vector<double> alphas = {0.0};  // {0} Euler, {0, 1/2} SSP-RK2, {0, 3/4, 1/3} SSP-RK3
    SchemeKind scheme = SchemeKind::WENO5;
    double cfl = 0.6;
    double dt_max = 1e30;   // cap when the advective velocity vanishes
    int reinit_every = 0;   // steps between re-initializations, 0 = never
    // construction feeding geometry-driven velocities and, for those flows,
    // the transported stencils; plain for externally prescribed velocities
    ConstructOp geom_op = ConstructOp::Plain;
};

/// Advective scenarios: dt = cfl*h/vmax (dt_max when vmax == 0).
/// Curvature-driven: dt = h^2/4. Throws unless cfl is in (0, 1].
double compute_dt(double vmax, double h, double cfl, const VelocitySpec& vel, double dt_max);

/// Velocity at one cell for one region; geometry-driven kinds read a local
/// constructed patch of `field` (ghosts must be filled). Degenerate gradients
/// yield zero velocity.
Vec2 eval_velocity(const VelocitySpec& vel, const RegionalField& field, const Grid& grid,
                   int i, int j, int region, double t, ConstructOp op = ConstructOp::Clamped);

struct CellUpdate {
    double varphi;
    int chi;
};

/// One Runge-Kutta sub-step of a cell whose 3x3 neighborhood holds a single
/// region: advects the unsigned field directly.
CellUpdate substep_full(const RegionalField& fs, const RegionalField& fn, const Grid& grid,
                        int i, int j, Vec2 v, double dt, double alpha, SchemeKind scheme,
                        ConstructOp op = ConstructOp::Plain);

/// Two-region neighborhood: advects the local level set of the primary
/// indicator; a sign change hands the cell to the secondary.
CellUpdate substep_two_region(const RegionalField& fs, const RegionalField& fn,
                              const Grid& grid, int i, int j, Vec2 v, double dt,
                              double alpha, SchemeKind scheme,
                              ConstructOp op = ConstructOp::Plain);

/// Complex neighborhood: advects the primary's local level set; on a sign
/// change every region of the index set is advected (v_per_region aligned
/// with xs) and the result reconstructed.
CellUpdate substep_complex(const RegionalField& fs, const RegionalField& fn,
                           const Grid& grid, int i, int j, const LocalIndexSet& xs,
                           std::span<const Vec2> v_per_region, double dt, double alpha,
                           SchemeKind scheme, ConstructOp op = ConstructOp::Plain);

/// Time integrator: frozen-input/fresh-output sub-steps with ghost fills in
/// between; neighborhood types are classified on each sub-step's input.
class Stepper {
  public:
    Stepper(const Grid& grid, const BoundarySpec& bc, const StepPlan& plan,
            const VelocitySpec& vel);

    /// Evaluates the step's velocity samples at time t on the current field
    /// (ghosts are filled here) and returns max|v| over active cells.
    double prepare(RegionalField& field, double t, const NarrowBand* band);

    /// Advances the prepared field by dt in place.
    void step(RegionalField& field, double t, double dt, const NarrowBand* band);

  private:
    const Grid& grid_;
    BoundarySpec bc_;
    StepPlan plan_;
    VelocitySpec vel_;

    RegionalField fn_;    // time-level-n snapshot
    RegionalField next_;
    double prepare_t_ = 0.0;
    std::vector<double> velx_, vely_;
    std::unordered_map<int, std::array<Vec2, 9>> complex_vel_;  // per X_s slot

    Vec2 velocity_for(int linear, int slot) const;
    void sweep(const RegionalField& cur, RegionalField& out, double dt, double alpha,
               const NarrowBand* band);
};

/// Convenience single-step wrapper around Stepper.
void advance(RegionalField& field, const Grid& grid, const VelocitySpec& vel,
             const StepPlan& plan, double t, double dt, const NarrowBand* band = nullptr);

}  // namespace rls
