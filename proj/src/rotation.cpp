#include "xcav/rotation.hpp"

#include <cmath>

#include "xcav/errors.hpp"

namespace xcav {

Vec3 rotate_wavevector(const Vec3& k_cav, double theta_in) {
    const double s = std::sin(theta_in), c = std::cos(theta_in);
    return {k_cav[0] * s - k_cav[2] * c, k_cav[1], k_cav[0] * c + k_cav[2] * s};
}

Vec3 rotate_point(const Vec3& r_cav, double theta_in) {
    return rotate_wavevector(r_cav, theta_in);
}

double f_delta(double kx, double /*ky*/, double kz, double theta_in) {
    if (kz <= 0.0)
        throw numeric_error("F_delta is singular on the kz = 0 rim");
    return std::abs(std::sin(theta_in) + kx * std::cos(theta_in) / kz);
}

double i_tilde(double kx, double ky, double kz, double theta_in, double w0) {
    const double s = std::sin(theta_in), c = std::cos(theta_in);
    const double bracket =
        ky * ky + kx * kx * s * s + kz * kz * c * c - 2.0 * kx * kz * c * s;
    return 0.5 * w0 * w0 * std::exp(-0.25 * w0 * w0 * bracket);
}

double root_function(double kx, double ky, double kz, double theta_in, double k) {
    const double s = std::sin(theta_in), c = std::cos(theta_in);
    const double kxp = kx * s - kz * c;
    const double arg = k * k - ky * ky - kxp * kxp;
    if (arg < 0.0)
        throw numeric_error("root function undefined: rotated transverse momentum off shell");
    return std::sqrt(arg) - kx * c - kz * s;
}

CavityAngularSpectrum cavity_angular_spectrum(const BeamSpec& spec,
                                              const KGridGeometry& geom,
                                              double omega, double rim_epsilon) {
    CavityAngularSpectrum out;
    out.theta_in = spec.theta_in;
    out.omega = omega;
    out.focus_offset = {spec.focus_offset[0], spec.focus_offset[1],
                        spec.focus_offset[2]};
    out.grid.geom = geom;
    out.grid.values.assign(geom.cells(), cplx(0.0));
    out.grid.mask.assign(geom.cells(), 0);

    const double k = omega / consts::c_light;
    const double k2 = k * k;
    const double kz_min = rim_epsilon * k;
    const SpectralEnvelope env = normalize_amplitude(spec);
    out.norm_amplitude = env.A0;
    // The appendix-style prefactor A~/(2pi) equals the spectral envelope A(w)
    // of the main-text angular spectrum; using A(w) directly keeps the vacuum
    // synthesis consistent with the paraxial focus amplitude 2pi A(w).
    const cplx amplitude = env(omega);

    std::size_t on_shell = 0;
    for (std::size_t i = 0; i < geom.nx; ++i) {
        const double kx = geom.kx(i);
        for (std::size_t j = 0; j < geom.ny; ++j) {
            const double ky = geom.ky(j);
            const double shell = k2 - kx * kx - ky * ky;
            if (shell <= kz_min * kz_min) continue; // off shell or rim: masked
            const double kz = std::sqrt(shell);
            const std::size_t cell = geom.index(i, j);
            const double mag = i_tilde(kx, ky, kz, spec.theta_in, spec.w0) *
                               f_delta(kx, ky, kz, spec.theta_in);
            const double phase = -(kx * out.focus_offset[0] +
                                   ky * out.focus_offset[1] +
                                   kz * out.focus_offset[2]);
            out.grid.values[cell] = amplitude * mag * std::exp(cplx(0.0, phase));
            out.grid.mask[cell] = 1;
            ++on_shell;
        }
    }
    if (on_shell == 0)
        throw numeric_error("cavity angular spectrum: grid is entirely off shell");
    return out;
}

KGridGeometry default_k_grid(const BeamSpec& spec, double omega, std::size_t n,
                             double sigma_cover, std::optional<double> x_span,
                             std::optional<double> y_span) {
    if (n < 2) throw config_error("k grid needs at least 2 points per axis");
    const double k = omega / consts::c_light;
    const double s = std::sin(spec.theta_in);
    const double sigma_kx = 2.0 * s / spec.w0;
    const double sigma_ky = 2.0 / spec.w0;
    // sag of the mode-ridge contour kx(ky) across the covered ky range
    const double ky_reach = std::min(sigma_cover * sigma_ky, k * s);
    const double ridge_sag = ky_reach * ky_reach / (2.0 * k);

    KGridGeometry g;
    g.nx = g.ny = n;
    g.dkx = x_span ? 2.0 * consts::pi / *x_span
                   : (2.0 * sigma_cover * sigma_kx + 2.0 * ridge_sag) /
                         static_cast<double>(n);
    g.dky = y_span ? 2.0 * consts::pi / *y_span
                   : 2.0 * sigma_cover * sigma_ky / static_cast<double>(n);
    const double kxc = k * std::cos(spec.theta_in);
    g.kx0 = kxc - 0.5 * static_cast<double>(n) * g.dkx;
    g.ky0 = -0.5 * static_cast<double>(n) * g.dky;
    return g;
}

} // namespace xcav
