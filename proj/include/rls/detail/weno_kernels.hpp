#pragma once

// Internal finite-difference kernels shared by the scheme API and the
// transport sweep. Kept header-inline: these run per cell per sub-step.

#include <algorithm>
#include <span>

#include "rls/schemes.hpp"

namespace rls::detail {

constexpr double kWeno5Eps = 1e-6;
constexpr double kCu6Eps = 1e-8;
constexpr double kCu6C = 20.0;

inline double sq(double x) { return x * x; }

// Face value between v[2] and v[3] of five staggered cell averages, classic
// 5th-order WENO with ideal weights (1/10, 6/10, 3/10). The weights are
// combined over a common denominator so the kernel costs a single division.
inline double weno5_face(const double v[5], double* weights_out) {
    const double b0 = 13.0 / 12.0 * sq(v[0] - 2.0 * v[1] + v[2]) +
                      0.25 * sq(v[0] - 4.0 * v[1] + 3.0 * v[2]);
    const double b1 = 13.0 / 12.0 * sq(v[1] - 2.0 * v[2] + v[3]) + 0.25 * sq(v[1] - v[3]);
    const double b2 = 13.0 / 12.0 * sq(v[2] - 2.0 * v[3] + v[4]) +
                      0.25 * sq(3.0 * v[2] - 4.0 * v[3] + v[4]);

    const double d0 = sq(kWeno5Eps + b0), d1 = sq(kWeno5Eps + b1), d2 = sq(kWeno5Eps + b2);
    const double c0 = 0.1 * d1 * d2, c1 = 0.6 * d0 * d2, c2 = 0.3 * d0 * d1;
    const double inv = 1.0 / (c0 + c1 + c2);

    const double q0 = (2.0 * v[0] - 7.0 * v[1] + 11.0 * v[2]) * (1.0 / 6.0);
    const double q1 = (-v[1] + 5.0 * v[2] + 2.0 * v[3]) * (1.0 / 6.0);
    const double q2 = (2.0 * v[2] + 5.0 * v[3] - v[4]) * (1.0 / 6.0);
    if (weights_out) {
        weights_out[0] = c0 * inv;
        weights_out[1] = c1 * inv;
        weights_out[2] = c2 * inv;
    }
    return (c0 * q0 + c1 * q1 + c2 * q2) * inv;
}

// Smoothness of the full six-cell stencil (quintic reconstruction).
inline double cu6_beta6(const double f[6]) {
    return (f[0] * (271779.0 * f[0] - 2380800.0 * f[1] + 4086352.0 * f[2] -
                    3462252.0 * f[3] + 1458762.0 * f[4] - 245620.0 * f[5]) +
            f[1] * (5653317.0 * f[1] - 20427884.0 * f[2] + 17905032.0 * f[3] -
                    7727988.0 * f[4] + 1325006.0 * f[5]) +
            f[2] * (19510972.0 * f[2] - 35817664.0 * f[3] + 15929912.0 * f[4] -
                    2792660.0 * f[5]) +
            f[3] * (17195652.0 * f[3] - 15880404.0 * f[4] + 2863984.0 * f[5]) +
            f[4] * (3824847.0 * f[4] - 1429976.0 * f[5]) + 139633.0 * f[5] * f[5]) /
           120960.0;
}

// Face value between v[2] and v[3] of six staggered cell averages: the three
// upwind candidates plus the downwind one, blended toward the 6th-order
// central value (ideal weights 1/20, 9/20, 9/20, 1/20) by the adaptive
// central-upwind rule.
inline double cu6_face(const double v[6]) {
    const double b0 = 13.0 / 12.0 * sq(v[0] - 2.0 * v[1] + v[2]) +
                      0.25 * sq(v[0] - 4.0 * v[1] + 3.0 * v[2]);
    const double b1 = 13.0 / 12.0 * sq(v[1] - 2.0 * v[2] + v[3]) + 0.25 * sq(v[1] - v[3]);
    const double b2 = 13.0 / 12.0 * sq(v[2] - 2.0 * v[3] + v[4]) +
                      0.25 * sq(3.0 * v[2] - 4.0 * v[3] + v[4]);
    const double b3 = 13.0 / 12.0 * sq(v[3] - 2.0 * v[4] + v[5]) +
                      0.25 * sq(3.0 * v[3] - 4.0 * v[4] + v[5]);
    const double b6 = cu6_beta6(v);
    const double tau6 = b6 - (b0 + b2 + 4.0 * b1) * (1.0 / 6.0);

    // alpha_k = C_k (C + tau6/(beta_k + eps)) over a common denominator
    const double e0 = b0 + kCu6Eps, e1 = b1 + kCu6Eps, e2 = b2 + kCu6Eps, e3 = b3 + kCu6Eps;
    const double a0 = 0.05 * (kCu6C * e0 + tau6) * e1 * e2 * e3;
    const double a1 = 0.45 * (kCu6C * e1 + tau6) * e0 * e2 * e3;
    const double a2 = 0.45 * (kCu6C * e2 + tau6) * e0 * e1 * e3;
    double a3 = 0.05 * (kCu6C * e3 + tau6) * e0 * e1 * e2;
    // The flux-split form of this scheme may weight the downwind stencil
    // freely; a one-sided derivative may not, or derivative kinks feed an
    // anti-diffusive spike. Cap the downwind candidate near its ideal share
    // of the upwind mass (1/19); the cap stays inactive on smooth data.
    a3 = std::min(a3, 1.25 / 19.0 * (a0 + a1 + a2));
    const double inv = 1.0 / (a0 + a1 + a2 + a3);

    const double q0 = (2.0 * v[0] - 7.0 * v[1] + 11.0 * v[2]) * (1.0 / 6.0);
    const double q1 = (-v[1] + 5.0 * v[2] + 2.0 * v[3]) * (1.0 / 6.0);
    const double q2 = (2.0 * v[2] + 5.0 * v[3] - v[4]) * (1.0 / 6.0);
    const double q3 = (11.0 * v[3] - 7.0 * v[4] + 2.0 * v[5]) * (1.0 / 6.0);
    return (a0 * q0 + a1 * q1 + a2 * q2 + a3 * q3) * inv;
}

// only the upwind-side derivative is ever used, so evaluate just that one
inline double upwind_side(const double* line, double h, SchemeKind kind,
                          bool positive_velocity) {
    switch (kind) {
        case SchemeKind::Upwind1:
            return positive_velocity ? (line[1] - line[0]) / h : (line[2] - line[1]) / h;
        case SchemeKind::WENO5: {
            const double inv_h = 1.0 / h;
            double v[5];
            if (positive_velocity) {
                for (int k = 0; k < 5; ++k) v[k] = (line[k + 1] - line[k]) * inv_h;
                return weno5_face(v, nullptr);
            }
            for (int k = 0; k < 5; ++k) v[k] = (line[5 - k] - line[6 - k]) * inv_h;
            return -weno5_face(v, nullptr);
        }
        case SchemeKind::WENOCU6: {
            const double inv_h = 1.0 / h;
            double v[6];
            if (positive_velocity) {
                for (int k = 0; k < 6; ++k) v[k] = (line[k + 1] - line[k]) * inv_h;
                return cu6_face(v);
            }
            for (int k = 0; k < 6; ++k) v[k] = (line[5 - k] - line[6 - k]) * inv_h;
            return -cu6_face(v);
        }
        case SchemeKind::SemiLagrangian:
            break;
    }
    return 0.0;
}

}  // namespace rls::detail
