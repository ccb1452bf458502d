#include "rls/transport.hpp"

#include "rls/detail/patch_contour.hpp"
#include "rls/detail/weno_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rls {

double compute_dt(double vmax, double h, double cfl, const VelocitySpec& vel, double dt_max) {
    if (cfl <= 0.0 || cfl > 1.0)
        throw std::invalid_argument("compute_dt: cfl must be in (0, 1]");
    if (vel.curvature_limited()) return h * h / 4.0;
    if (vmax <= 0.0) return dt_max;  // static velocity field: fall back to the cap
    return cfl * h / vmax;
}

namespace {

constexpr double kVortexAmp = 1.0;

inline Vec2 vortex_velocity(double x, double y, double t, double reversal_time) {
    const double sx = std::sin(M_PI * x), sy = std::sin(M_PI * y);
    Vec2 v{-kVortexAmp * sx * sx * std::sin(2.0 * M_PI * y),
           kVortexAmp * sy * sy * std::sin(2.0 * M_PI * x)};
    if (t >= reversal_time) {
        v.x = -v.x;
        v.y = -v.y;
    }
    return v;
}

// Cyclic successor rule for the normal-driven pair speeds over regions 1..3:
// the pair's designated region is the cyclic successor of the other member.
inline int designated_region(int a, int b) {
    if (b == a % 3 + 1) return b;
    if (a == b % 3 + 1) return a;
    return std::min(a, b);
}

void build_patch(const RegionalField& f, const Grid& g, int i, int j, int region,
                 ConstructOp op, double patch[9]) {
    if (op == ConstructOp::Clamped)
        construct_patch3_clamped(f, g, i, j, region, patch);
    else
        construct_patch3(f, g, i, j, region, patch);
}

}  // namespace

Vec2 eval_velocity(const VelocitySpec& vel, const RegionalField& field, const Grid& grid,
                   int i, int j, int region, double t, ConstructOp op) {
    switch (vel.kind) {
        case VelocitySpec::Kind::Uniform:
            return {vel.vx, vel.vy};
        case VelocitySpec::Kind::Rotation: {
            const double dx = grid.xc(i) - vel.center.x, dy = grid.yc(j) - vel.center.y;
            return {-vel.omega * dy, vel.omega * dx};
        }
        case VelocitySpec::Kind::Radial: {
            const double dx = grid.xc(i) - vel.center.x, dy = grid.yc(j) - vel.center.y;
            const double r = std::sqrt(dx * dx + dy * dy);
            if (r < 1e-12) return {0.0, 0.0};
            return {vel.speed * dx / r, vel.speed * dy / r};
        }
        case VelocitySpec::Kind::SingleVortex:
            return vortex_velocity(grid.xc(i), grid.yc(j), t, vel.reversal_time);
        case VelocitySpec::Kind::MeanCurvature: {
            const LocalIndexSet xs = local_index_set(field, grid, i, j);
            if (xs.count == 1) {
                double patch[9];
                construct_patch3(field, grid, i, j, region, patch);
                const GeometryAtCell geo = normal_curvature3(patch, grid.h);
                if (geo.degenerate) return {0.0, 0.0};
                const double kap = std::clamp(geo.kappa, -1.0 / grid.h, 1.0 / grid.h);
                return {vel.gamma * kap * geo.n.x, vel.gamma * kap * geo.n.y};
            }
            // interface cells move with the curvature of the pairwise field
            // of the two nearest regions: its zero set continues each
            // interface past a junction as the equidistant bisector, which
            // makes the relaxed 120-degree junction the stationary state
            double pr[9];
            build_patch(field, grid, i, j, region, op, pr);
            int partner = 0;
            double best = -1e300;
            for (int m = 0; m < xs.count; ++m) {
                const int cand = xs.ids[m];
                if (cand == region) continue;
                double pc[9];
                build_patch(field, grid, i, j, cand, op, pc);
                if (pc[4] > best) {
                    best = pc[4];
                    partner = cand;
                }
            }
            if (partner == 0) return {0.0, 0.0};
            double ps[9], psi[9];
            build_patch(field, grid, i, j, partner, op, ps);
            for (int m = 0; m < 9; ++m) psi[m] = 0.5 * (pr[m] - ps[m]);
            const GeometryAtCell geo = normal_curvature3(psi, grid.h);
            if (geo.degenerate) return {0.0, 0.0};
            const double kap = std::clamp(geo.kappa, -1.0 / grid.h, 1.0 / grid.h);
            return {vel.gamma * kap * geo.n.x, vel.gamma * kap * geo.n.y};
        }
        case VelocitySpec::Kind::NormalDriven: {
            const LocalIndexSet xs = local_index_set(field, grid, i, j);
            int partner;
            if (region == xs.primary())
                partner = xs.count >= 2 ? xs.ids[1] : region % 3 + 1;
            else
                partner = xs.primary();
            const int gov = designated_region(region, partner);
            double patch[9];
            if (!xs.contains(gov)) {
                // governing region out of the neighborhood: plain construction
                // still yields a usable far-field gradient
                construct_patch3(field, grid, i, j, gov, patch);
            } else {
                build_patch(field, grid, i, j, gov, op, patch);
            }
            const GeometryAtCell geo = normal_curvature3(patch, grid.h);
            if (geo.degenerate) return {0.0, 0.0};
            return {-geo.n.x, -geo.n.y};  // outward unit normal of the governing region
        }
    }
    return {0.0, 0.0};
}

namespace {

constexpr int kMaxHalfwidth = 3;

struct CrossBuffers {
    double x[2 * kMaxHalfwidth + 1];
    double y[2 * kMaxHalfwidth + 1];
};

inline void construct_cross(const RegionalField& f, const Grid& g, int i, int j, int chi_r,
                            int t, CrossBuffers& buf) {
    const int c0 = g.idx(i, j);
    const int st = g.stride;
    for (int m = -t; m <= t; ++m) {
        const int ix = c0 + m;
        buf.x[m + t] = f.chi[ix] == chi_r ? f.varphi[ix] : -f.varphi[ix];
        const int iy = c0 + m * st;
        buf.y[m + t] = f.chi[iy] == chi_r ? f.varphi[iy] : -f.varphi[iy];
    }
}

// Clamped stencil values: foreign cells take -min(h, distance to the zero
// contour of the plain field inside the center cell's 3x3 neighborhood).
// Restores the signed-distance property of the local fields near junctions,
// where the plain construction signs the distance to the whole network.
template <int T>
void clamp_cross(const RegionalField& fs, const Grid& g, int i, int j, int chi_r,
                 double x[2 * T + 1], double y[2 * T + 1]) {
    double patch[9];
    bool own[9];
    bool any_own = false, any_foreign = false;
    int m = 0;
    const int c0 = g.idx(i, j);
    const int st = g.stride;
    for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di, ++m) {
            const int ix = c0 + dj * st + di;
            own[m] = fs.chi[ix] == chi_r;
            patch[m] = own[m] ? fs.varphi[ix] : -fs.varphi[ix];
            (own[m] ? any_own : any_foreign) = true;
        }
    if (!any_own || !any_foreign) return;  // nothing to clamp

    detail::PatchSegment segs[8];
    const int nseg = detail::patch_contour_segments(patch, own, segs);
    if (nseg == 0) return;

    auto clamp_line = [&](double* line, bool along_x) {
        for (int k = -T; k <= T; ++k) {
            if (line[k + T] >= 0.0) continue;  // own cell keeps the plain value
            const double px = along_x ? k : 0.0, py = along_x ? 0.0 : k;
            double ds = 1e300;
            for (int s = 0; s < nseg; ++s)
                ds = std::min(ds, detail::point_segment_dist(px, py, segs[s]));
            // the cap scales with the stencil offset so far cells of a flat
            // interface keep their true distances
            const double cap = std::max(1, k < 0 ? -k : k);
            line[k + T] = -std::min(cap, ds) * g.h;
        }
    };
    clamp_line(x, true);
    clamp_line(y, false);
}

template <SchemeKind K>
inline double advect_one_t(const RegionalField& fs, const RegionalField& fn, const Grid& g,
                           int i, int j, int chi_r, Vec2 v, double dt, double alpha,
                           ConstructOp op) {
    constexpr int t = K == SchemeKind::Upwind1 ? 1 : 3;
    double x[2 * t + 1], y[2 * t + 1];
    const int c0 = g.idx(i, j);
    const int st = g.stride;
    for (int m = -t; m <= t; ++m) {
        const int ix = c0 + m;
        x[m + t] = fs.chi[ix] == chi_r ? fs.varphi[ix] : -fs.varphi[ix];
        const int iy = c0 + m * st;
        y[m + t] = fs.chi[iy] == chi_r ? fs.varphi[iy] : -fs.varphi[iy];
    }
    if (op == ConstructOp::Clamped) clamp_cross<t>(fs, g, i, j, chi_r, x, y);
    double grad = 0.0;
    if (v.x != 0.0) grad += v.x * detail::upwind_side(x, g.h, K, v.x > 0.0);
    if (v.y != 0.0) grad += v.y * detail::upwind_side(y, g.h, K, v.y > 0.0);
    const double advected = x[t] - dt * grad;
    if (alpha == 0.0) return advected;
    double phin = signed_distance_value(fn.varphi[c0], fn.chi[c0], chi_r);
    if (op == ConstructOp::Clamped && phin < 0.0) phin = std::max(phin, -g.h);
    return alpha * phin + (1.0 - alpha) * advected;
}

inline double advect_one(const RegionalField& fs, const RegionalField& fn, const Grid& g,
                         int i, int j, int chi_r, Vec2 v, double dt, double alpha,
                         SchemeKind scheme, ConstructOp op = ConstructOp::Plain) {
    switch (scheme) {
        case SchemeKind::Upwind1:
            return advect_one_t<SchemeKind::Upwind1>(fs, fn, g, i, j, chi_r, v, dt, alpha, op);
        case SchemeKind::WENO5:
            return advect_one_t<SchemeKind::WENO5>(fs, fn, g, i, j, chi_r, v, dt, alpha, op);
        case SchemeKind::WENOCU6:
            return advect_one_t<SchemeKind::WENOCU6>(fs, fn, g, i, j, chi_r, v, dt, alpha, op);
        case SchemeKind::SemiLagrangian:
            break;
    }
    return 0.0;
}

}  // namespace

CellUpdate substep_full(const RegionalField& fs, const RegionalField& fn, const Grid& grid,
                        int i, int j, Vec2 v, double dt, double alpha, SchemeKind scheme,
                        ConstructOp op) {
    const int chi1 = fs.chi[grid.idx(i, j)];
    const double phi = advect_one(fs, fn, grid, i, j, chi1, v, dt, alpha, scheme, op);
    // no replacement indicator in range; keep the magnitude if the interface
    // overran the center
    return {std::abs(phi), chi1};
}

CellUpdate substep_two_region(const RegionalField& fs, const RegionalField& fn,
                              const Grid& grid, int i, int j, Vec2 v, double dt,
                              double alpha, SchemeKind scheme, ConstructOp op) {
    const LocalIndexSet xs = local_index_set(fs, grid, i, j);
    const double phi = advect_one(fs, fn, grid, i, j, xs.ids[0], v, dt, alpha, scheme, op);
    if (phi >= 0.0 || xs.count < 2) return {std::abs(phi), xs.ids[0]};
    return {-phi, xs.ids[1]};
}

CellUpdate substep_complex(const RegionalField& fs, const RegionalField& fn,
                           const Grid& grid, int i, int j, const LocalIndexSet& xs,
                           std::span<const Vec2> v_per_region, double dt, double alpha,
                           SchemeKind scheme, ConstructOp op) {
    const double phi1 = advect_one(fs, fn, grid, i, j, xs.ids[0], v_per_region[0], dt, alpha,
                                   scheme, op);
    if (phi1 >= 0.0) return {phi1, xs.ids[0]};

    double vals[9];
    vals[0] = phi1;
    for (int m = 1; m < xs.count; ++m)
        vals[m] = advect_one(fs, fn, grid, i, j, xs.ids[m], v_per_region[m], dt, alpha, scheme,
                             op);
    const Reconstructed rec = reconstruct(std::span<const double>(vals, xs.count),
                                          std::span<const int>(xs.ids.data(), xs.count));
    return {rec.varphi, rec.chi};
}

Stepper::Stepper(const Grid& grid, const BoundarySpec& bc, const StepPlan& plan,
                 const VelocitySpec& vel)
    : grid_(grid), bc_(bc), plan_(plan), vel_(vel) {
    fn_ = RegionalField(grid);
    next_ = RegionalField(grid);
    velx_.assign(grid.cell_count(), 0.0);
    vely_.assign(grid.cell_count(), 0.0);
}

double Stepper::prepare(RegionalField& field, double t, const NarrowBand* band) {
    fill_ghosts(field, grid_, bc_);
    fn_ = field;
    prepare_t_ = t;
    complex_vel_.clear();

    double vmax = 0.0;
    auto eval_cell = [&](int i, int j) {
        const int ix = grid_.idx(i, j);
        Vec2 v;
        if (!vel_.geometry_driven()) {
            v = eval_velocity(vel_, fn_, grid_, i, j, fn_.chi[ix], t, plan_.geom_op);
        } else {
            const LocalIndexSet xs = local_index_set(fn_, grid_, i, j);
            v = eval_velocity(vel_, fn_, grid_, i, j, xs.ids[0], t, plan_.geom_op);
            if (xs.count >= 3) {
                std::array<Vec2, 9> per{};
                per[0] = v;
                for (int m = 1; m < xs.count; ++m)
                    per[m] = eval_velocity(vel_, fn_, grid_, i, j, xs.ids[m], t, plan_.geom_op);
                complex_vel_[ix] = per;
            }
        }
        velx_[ix] = v.x;
        vely_[ix] = v.y;
        vmax = std::max(vmax, std::sqrt(v.x * v.x + v.y * v.y));
    };

    if (band) {
        for (int ix : band->active) {
            const int j = ix / grid_.stride - grid_.ghost;
            const int i = ix % grid_.stride - grid_.ghost;
            eval_cell(i, j);
        }
    } else {
        for (int j = 0; j < grid_.ny; ++j)
            for (int i = 0; i < grid_.nx; ++i) eval_cell(i, j);
    }
    return vmax;
}

Vec2 Stepper::velocity_for(int linear, int slot) const {
    if (slot == 0 || !vel_.geometry_driven()) return {velx_[linear], vely_[linear]};
    const auto it = complex_vel_.find(linear);
    if (it != complex_vel_.end()) return it->second[slot];
    return {velx_[linear], vely_[linear]};
}

void Stepper::sweep(const RegionalField& cur, RegionalField& out, double dt, double alpha,
                    const NarrowBand* band) {
    const int st = grid_.stride;
    const int off[9] = {-st - 1, -st, -st + 1, -1, 0, 1, st - 1, st, st + 1};

    auto cell_update = [&]<SchemeKind K>(int i, int j) {
        const int ix = grid_.idx(i, j);
        // fast neighborhood scan: most cells are uniform, many are two-region
        const int c0 = cur.chi[ix];
        int second = 0;
        bool complex_vs = false;
        for (int m = 0; m < 9; ++m) {
            const int c = cur.chi[ix + off[m]];
            if (c != c0) {
                if (second == 0) second = c;
                else if (c != second) {
                    complex_vs = true;
                    break;
                }
            }
        }
        CellUpdate upd;
        if (!complex_vs) {
            const double phi = advect_one_t<K>(cur, fn_, grid_, i, j, c0, velocity_for(ix, 0),
                                               dt, alpha, plan_.geom_op);
            if (second == 0)
                upd = {std::abs(phi), c0};
            else
                upd = phi >= 0.0 ? CellUpdate{phi, c0} : CellUpdate{-phi, second};
        } else {
            const LocalIndexSet xs = local_index_set(cur, grid_, i, j);
            std::array<Vec2, 9> per{};
            bool from_map = false;
            if (vel_.geometry_driven()) {
                const auto it = complex_vel_.find(ix);
                if (it != complex_vel_.end()) {
                    // per-slot velocities match when the index set is unchanged
                    // since prepare(); recompute against fn_ otherwise
                    per = it->second;
                    from_map = true;
                }
            }
            if (!from_map) {
                const Vec2 v0{velx_[ix], vely_[ix]};
                for (int m = 0; m < xs.count; ++m)
                    per[m] = vel_.geometry_driven()
                                 ? eval_velocity(vel_, fn_, grid_, i, j, xs.ids[m],
                                                 prepare_t_, plan_.geom_op)
                                 : v0;
            }
            upd = substep_complex(cur, fn_, grid_, i, j, xs,
                                  std::span<const Vec2>(per.data(), xs.count), dt, alpha,
                                  plan_.scheme, plan_.geom_op);
        }
        out.varphi[ix] = upd.varphi;
        out.chi[ix] = upd.chi;
    };

    auto run_cells = [&]<SchemeKind K>() {
        if (band) {
            for (int ix : band->active) {
                const int j = ix / grid_.stride - grid_.ghost;
                const int i = ix % grid_.stride - grid_.ghost;
                cell_update.template operator()<K>(i, j);
            }
        } else {
            for (int j = 0; j < grid_.ny; ++j)
                for (int i = 0; i < grid_.nx; ++i) cell_update.template operator()<K>(i, j);
        }
    };

    switch (plan_.scheme) {
        case SchemeKind::Upwind1: run_cells.template operator()<SchemeKind::Upwind1>(); break;
        case SchemeKind::WENO5: run_cells.template operator()<SchemeKind::WENO5>(); break;
        case SchemeKind::WENOCU6: run_cells.template operator()<SchemeKind::WENOCU6>(); break;
        case SchemeKind::SemiLagrangian: break;
    }
}

void Stepper::step(RegionalField& field, double t, double dt, const NarrowBand* band) {
    (void)t;
    if (plan_.scheme == SchemeKind::SemiLagrangian) {
        semi_lagrangian_advect(fn_, grid_, velx_, vely_, dt, band, field);
        fill_ghosts(field, grid_, bc_);
        return;
    }

    RegionalField* cur = &field;
    RegionalField* nxt = &next_;
    for (double alpha : plan_.alphas) {
        if (band) *nxt = *cur;  // frozen cells keep their values
        sweep(*cur, *nxt, dt, alpha, band);
        std::swap(cur, nxt);
        fill_ghosts(*cur, grid_, bc_);
    }
    if (cur != &field) field = *cur;
}

void advance(RegionalField& field, const Grid& grid, const VelocitySpec& vel,
             const StepPlan& plan, double t, double dt, const NarrowBand* band) {
    Stepper stepper(grid, grid.boundary, plan, vel);
    stepper.prepare(field, t, band);
    stepper.step(field, t, dt, band);
}

}  // namespace rls
