#include "rls/schemes.hpp"

#include "rls/detail/weno_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rls {

int stencil_halfwidth(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::Upwind1: return 1;
        case SchemeKind::WENO5: return 3;
        case SchemeKind::WENOCU6: return 3;
        case SchemeKind::SemiLagrangian: return 0;
    }
    return 0;
}

double weno5_biased(std::span<const double> phi6, double h, double* weights_out) {
    if (phi6.size() < 6) throw std::invalid_argument("weno5_biased: need 6 samples");
    double v[5];
    for (int k = 0; k < 5; ++k) v[k] = (phi6[k + 1] - phi6[k]) / h;
    return detail::weno5_face(v, weights_out);
}

double weno_cu6_biased(std::span<const double> phi7, double h) {
    if (phi7.size() < 7) throw std::invalid_argument("weno_cu6_biased: need 7 samples");
    double v[6];
    for (int k = 0; k < 6; ++k) v[k] = (phi7[k + 1] - phi7[k]) / h;
    return detail::cu6_face(v);
}

OneSidedDerivatives one_sided_derivatives(std::span<const double> line, double h,
                                          SchemeKind kind) {
    OneSidedDerivatives d;
    switch (kind) {
        case SchemeKind::Upwind1: {
            // line[0..2], center at 1
            d.dminus = (line[1] - line[0]) / h;
            d.dplus = (line[2] - line[1]) / h;
            return d;
        }
        case SchemeKind::WENO5: {
            // line[0..6], center at 3
            d.dminus = detail::upwind_side(line.data(), h, kind, true);
            d.dplus = detail::upwind_side(line.data(), h, kind, false);
            return d;
        }
        case SchemeKind::WENOCU6: {
            d.dminus = detail::upwind_side(line.data(), h, kind, true);
            d.dplus = detail::upwind_side(line.data(), h, kind, false);
            return d;
        }
        case SchemeKind::SemiLagrangian:
            throw std::invalid_argument("one_sided_derivatives: SL has no stencil derivative");
    }
    return d;
}

double upwind_side_derivative(std::span<const double> line, double h, SchemeKind kind,
                              bool positive_velocity) {
    return detail::upwind_side(line.data(), h, kind, positive_velocity);
}

double hj_upwind_gradient(std::span<const double> xline, std::span<const double> yline,
                          double h, double vx, double vy, SchemeKind kind) {
    double sum = 0.0;
    if (vx != 0.0) sum += vx * upwind_side_derivative(xline, h, kind, vx > 0.0);
    if (vy != 0.0) sum += vy * upwind_side_derivative(yline, h, kind, vy > 0.0);
    return sum;
}

void semi_lagrangian_advect(const RegionalField& in, const Grid& g,
                            std::span<const double> vx, std::span<const double> vy,
                            double dt, const NarrowBand* band, RegionalField& out) {
    const double xlo = g.xc(-g.ghost), xhi = g.xc(g.nx - 1 + g.ghost);
    const double ylo = g.yc(-g.ghost), yhi = g.yc(g.ny - 1 + g.ghost);

    auto update_cell = [&](int i, int j) {
        const int ix = g.idx(i, j);
        double xd = g.xc(i) - dt * vx[ix];
        double yd = g.yc(j) - dt * vy[ix];
        xd = std::clamp(xd, xlo, xhi);
        yd = std::clamp(yd, ylo, yhi);

        const LocalIndexSet xs = local_index_set(in, g, g.cell_of_x(xd), g.cell_of_y(yd));

        int i0 = static_cast<int>(std::floor((xd - g.x0) / g.h - 0.5));
        int j0 = static_cast<int>(std::floor((yd - g.y0) / g.h - 0.5));
        i0 = std::clamp(i0, -g.ghost, g.nx + g.ghost - 2);
        j0 = std::clamp(j0, -g.ghost, g.ny + g.ghost - 2);
        const double fx = std::clamp((xd - g.xc(i0)) / g.h, 0.0, 1.0);
        const double fy = std::clamp((yd - g.yc(j0)) / g.h, 0.0, 1.0);

        const int n00 = g.idx(i0, j0), n10 = g.idx(i0 + 1, j0);
        const int n01 = g.idx(i0, j0 + 1), n11 = g.idx(i0 + 1, j0 + 1);

        double vals[9];
        for (int r = 0; r < xs.count; ++r) {
            const int cr = xs.ids[r];
            const double v00 = signed_distance_value(in.varphi[n00], in.chi[n00], cr);
            const double v10 = signed_distance_value(in.varphi[n10], in.chi[n10], cr);
            const double v01 = signed_distance_value(in.varphi[n01], in.chi[n01], cr);
            const double v11 = signed_distance_value(in.varphi[n11], in.chi[n11], cr);
            vals[r] = (1.0 - fy) * ((1.0 - fx) * v00 + fx * v10) +
                      fy * ((1.0 - fx) * v01 + fx * v11);
        }
        const Reconstructed rec =
            reconstruct(std::span<const double>(vals, xs.count),
                        std::span<const int>(xs.ids.data(), xs.count));
        out.varphi[ix] = rec.varphi;
        out.chi[ix] = rec.chi;
    };

    if (band) {
        for (int ix : band->active) {
            const int j = ix / g.stride - g.ghost;
            const int i = ix % g.stride - g.ghost;
            update_cell(i, j);
        }
    } else {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) update_cell(i, j);
    }
}

}  // namespace rls
