#pragma once

#include <vector>

#include "xcav/constants.hpp"
#include "xcav/grid.hpp"
#include "xcav/stack.hpp"

namespace xcav {

/// s-polarization Fresnel reflection coefficient for an interface between
/// media with normal wave numbers kz_above / kz_below.
cplx fresnel_s(cplx kz_above, cplx kz_below);

/// Normal wavenumber inside a medium: sqrt(n^2 w^2/c^2 - kpar^2) on the
/// branch Im kz >= 0 (ties resolved toward Re kz >= 0).
cplx layer_kz(const MaterialIndex& m, double omega, double kpar2);

/// Downward/upward plane-wave amplitudes of one layer for unit incidence.
/// Field inside layer j at offset u from its top:
///   E(u) = down_top * e^{i kz u} + up_bottom * e^{i kz (t_j - u)}
/// referencing each amplitude at the boundary where it is largest, so the
/// stored exponentials only ever decay. The top layer uses
///   E(z<=0) = e^{i kz z} + r e^{-i kz z};
/// the substrate has up_bottom = 0 and t = 0.
struct LayerWaves {
    cplx down_top;
    cplx up_bottom;
    cplx kz;
};

struct StackFields {
    cplx r; // reflection amplitude of the whole stack
    std::vector<LayerWaves> waves;
};

/// Solve the Parratt recursion for every layer amplitude at one in-plane
/// wave vector. Requires on-shell incidence in the top layer.
StackFields solve_stack_fields(const LayerStack& stack, double kpar2, double omega);

/// Reflection amplitude only.
cplx parratt_reflectivity(const LayerStack& stack, double kpar_x, double kpar_y,
                          double omega);

/// Field at depth z given a solved amplitude set.
cplx evaluate_mode(const LayerStack& stack, const StackFields& fields, double z);

/// Mode function E0_s(z, k_par, w): complex field at depth z per unit
/// s-polarized plane wave incident from the top.
cplx mode_function(const LayerStack& stack, double z, double kpar_x,
                   double kpar_y, double omega);

struct RockingCurve {
    std::vector<double> theta;        // rad
    std::vector<double> reflectivity; // |r|^2
    double omega = 0.0;
};

/// |r(theta)|^2 with k_par = (w/c) cos(theta) along x.
RockingCurve rocking_curve(const LayerStack& stack, double omega,
                           const std::vector<double>& theta_grid);

/// Local minima of a rocking curve as (theta, reflectivity), in angle order.
std::vector<std::pair<double, double>> rocking_minima(const RockingCurve& rc);

/// First rocking minimum in [theta_lo, theta_hi]; throws numeric_error when
/// no interior minimum exists.
std::pair<double, double> first_rocking_minimum(const LayerStack& stack,
                                                double omega, double theta_lo,
                                                double theta_hi,
                                                std::size_t samples = 8001);

/// Mode function sampled on a k grid at fixed depth; off-shell cells are
/// masked and carry value 0.
AngularSpectrumGrid mode_function_grid(const LayerStack& stack, double z,
                                       const KGridGeometry& geom, double omega);

/// Amplitudes of one layer tabulated over a k grid. A z-scan grouped by layer
/// pays the Parratt sweep once per layer instead of once per depth.
struct LayerAmplitudeGrid {
    KGridGeometry geom;
    std::size_t layer = 0;
    double thickness = 0.0;          // 0 for the boundary layers
    std::vector<cplx> down;          // per cell, see LayerWaves
    std::vector<cplx> up;
    std::vector<cplx> kz;
    std::vector<std::uint8_t> mask;  // on-shell validity

    /// Field at offset u from the layer top (u <= 0 in the top layer,
    /// u >= 0 in the substrate measured from its top interface).
    cplx evaluate(std::size_t cell, double u) const;
};

LayerAmplitudeGrid layer_amplitude_grid(const LayerStack& stack, std::size_t layer,
                                        const KGridGeometry& geom, double omega);

} // namespace xcav
