#pragma once

#include <span>

#include "rls/grid.hpp"
#include "rls/regional.hpp"

namespace rls {

enum class SchemeKind { Upwind1, WENO5, WENOCU6, SemiLagrangian };

/// Stencil half-width t; the cross-shaped derivative stencil spans 2t+1 cells.
int stencil_halfwidth(SchemeKind kind);

struct OneSidedDerivatives {
    double dminus = 0.0;
    double dplus = 0.0;
};

/// Left-biased 5th-order WENO derivative at the node phi[3] of six contiguous
/// samples phi[0..5] = phi(x-3h .. x+2h). Smoothness indicators per the
/// classic formulation, ideal weights (1/10, 6/10, 3/10), epsilon 1e-6.
/// `weights_out`, when non-null, receives the three normalized weights.
double weno5_biased(std::span<const double> phi6, double h, double* weights_out = nullptr);

/// Left-biased derivative at the node phi[3] of seven contiguous samples
/// phi[0..6] = phi(x-3h .. x+3h) using the adaptive central-upwind 6th-order
/// blend of four candidate stencils (ideal weights 1/20, 9/20, 9/20, 1/20).
double weno_cu6_biased(std::span<const double> phi7, double h);

/// Both one-sided derivatives at the center of `line` (length 2t+1) for the
/// given scheme (Upwind1, WENO5 or WENOCU6).
OneSidedDerivatives one_sided_derivatives(std::span<const double> line, double h,
                                          SchemeKind kind);

/// Single one-sided derivative at the center of `line`, biased toward the
/// upwind side of a velocity component of the given sign.
double upwind_side_derivative(std::span<const double> line, double h, SchemeKind kind,
                              bool positive_velocity);

/// v . grad(phi) with component-wise simple upwinding: per axis D- when the
/// velocity component is positive, D+ when negative, no contribution at zero.
/// xline/yline hold the constructed local level set along the cross stencil.
double hj_upwind_gradient(std::span<const double> xline, std::span<const double> yline,
                          double h, double vx, double vy, SchemeKind kind);

/// Semi-Lagrangian step: per cell, backtrace the departure point with the
/// cell-center velocity, form the local index set at the donor cell,
/// bilinearly interpolate each constructed local level set to the departure
/// point and reconstruct. Backtraces are clamped to the ghost region.
/// vx/vy are cell-center velocity samples indexed like the field.
void semi_lagrangian_advect(const RegionalField& in, const Grid& grid,
                            std::span<const double> vx, std::span<const double> vy,
                            double dt, const NarrowBand* band, RegionalField& out);

}  // namespace rls
