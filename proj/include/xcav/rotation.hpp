#pragma once

#include <array>

#include "xcav/beam.hpp"
#include "xcav/grid.hpp"

namespace xcav {

using Vec3 = std::array<double, 3>;

/// Wave vector in pulse coordinates for a cavity-coordinate wave vector,
/// for a beam incident at grazing angle theta_in:
///   k_p = (kx sin - kz cos, ky, kx cos + kz sin).
Vec3 rotate_wavevector(const Vec3& k_cav, double theta_in);

/// Spatial rotation of a cavity-coordinate point into pulse coordinates
/// (same rotation about the y axis through the focus).
Vec3 rotate_point(const Vec3& r_cav, double theta_in);

/// Jacobian factor |1/f'| of the single-root delta reduction:
///   F_delta = |sin(theta_in) + kx cos(theta_in)/kz|.
/// Throws numeric_error at the kz = 0 rim (callers mask those cells).
double f_delta(double kx, double ky, double kz, double theta_in);

/// Rotated Gaussian envelope
///   I~ = (w0^2/2) exp(-(w0^2/4)[ky^2 + kx^2 sin^2 + kz^2 cos^2 - 2 kx kz cos sin]).
double i_tilde(double kx, double ky, double kz, double theta_in, double w0);

/// The root function of Appendix-type wave-space reduction whose zeros pick the
/// on-shell kz; exposed for the finite-difference Jacobian oracle.
double root_function(double kx, double ky, double kz, double theta_in, double k);

/// Analytic cavity angular spectrum of the incoming Gaussian pulse:
///   E_in(kx, ky) = A(w) I~(kx,ky,kz+) F_delta(kx,ky,kz+) Theta(k^2-kx^2-ky^2)
///                  * exp(-i k.focus_offset)
/// with kz+ = sqrt(k^2-kx^2-ky^2). Cells with kz < rim_epsilon*k are masked
/// (the F_delta rim divergence carries negligible Gaussian weight for
/// theta_in >> theta_div).
struct CavityAngularSpectrum {
    AngularSpectrumGrid grid;
    double theta_in = 0.0;
    double omega = 0.0;
    Vec3 focus_offset{0.0, 0.0, 0.0};
    double norm_amplitude = 0.0; // free-space focus peak |A0| of the pulse
};

CavityAngularSpectrum cavity_angular_spectrum(const BeamSpec& spec,
                                              const KGridGeometry& geom,
                                              double omega,
                                              double rim_epsilon = 1e-6);

/// Default k grid for a beam/stack pairing: n x n cells centered on
/// kx = k cos(theta_in), ky = 0. Axis extents cover +-sigma_cover Gaussian
/// widths of I~ (plus the mode-ridge sag across the ky range); explicit
/// real-space spans override the derived spacing per axis.
KGridGeometry default_k_grid(const BeamSpec& spec, double omega, std::size_t n,
                             double sigma_cover = 6.0,
                             std::optional<double> x_span = std::nullopt,
                             std::optional<double> y_span = std::nullopt);

} // namespace xcav
