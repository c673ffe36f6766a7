#pragma once

#include <array>
#include <string>
#include <vector>

#include "xcav/constants.hpp"
#include "xcav/stack.hpp"

namespace xcav {

/// Pulsed Gaussian beam parameters. The pulse pair (n_photons, tau_pulse)
/// and (pulse_energy, bandwidth_rel) are kept mutually consistent; factories
/// derive the missing pair for a Fourier-limited pulse via
/// tau = sqrt(ln 2)/(b_r w) and N = E/(hbar w).
struct BeamSpec {
    double omega = 0.0;     // carrier angular frequency, rad/s (resonant)
    double w0 = 0.0;        // waist at focus, m
    double theta_in = 0.0;  // grazing incidence angle to the cavity plane, rad
    double n_photons = 0.0;
    double tau_pulse = 0.0; // s
    double pulse_energy = 0.0; // J
    double bandwidth_rel = 0.0;
    std::array<double, 3> focus_offset{0.0, 0.0, 0.0}; // cavity coordinates, m
    double alignment_cos = 1.0; // dipole/polarization alignment factor

    double wavenumber() const { return omega / consts::c_light; }
    double theta_div() const { return 2.0 / (wavenumber() * w0); }
    double rayleigh_length() const { return 0.5 * wavenumber() * w0 * w0; }

    static BeamSpec from_photons(double omega, double w0, double theta_in,
                                 double n_photons, double tau_pulse);
    static BeamSpec from_energy(double omega, double w0, double theta_in,
                                double pulse_energy, double bandwidth_rel);

    /// Waist from a requested divergence, w0 = 2/(k theta_div).
    static double waist_from_divergence(double omega, double theta_div);

    std::vector<std::string> warnings() const;
};

/// Fourier-limited spectral envelope A(w) = (A0/2pi) exp(-tau^2 (w-w0)^2 / 2).
/// A0 is the focus peak amplitude of the frequency-domain phasor field and is
/// real positive by the global phase convention.
struct SpectralEnvelope {
    double A0 = 0.0;    // (V/m) s
    double tau = 0.0;   // s
    double omega0 = 0.0;

    cplx operator()(double omega) const;
};

/// |A0| from the photon number: |A0| = sqrt(2 N hbar w tau / (pi^2 sqrt(pi) eps0 w0^2 c)).
SpectralEnvelope normalize_amplitude(const BeamSpec& spec);

/// Angular spectrum of the Gaussian beam in pulse coordinates:
/// A(w) (w0^2/2) exp(-w0^2 |k_perp|^2/4) exp(i z_p kz),  kz = sqrt(k^2-|k_perp|^2).
/// Throws numeric_error off shell (|k_perp| > k).
cplx angular_spectrum_pulse_frame(const BeamSpec& spec, double kx_perp,
                                  double ky_perp, double z_p, double omega);

/// Analytic paraxial field at a point in pulse coordinates (focus at origin).
cplx paraxial_field(const BeamSpec& spec, double x_p, double y_p, double z_p,
                    double omega);

/// Peak total pulse area Phi = (2pi/hbar) |d A0| for aligned polarization.
double peak_pulse_area(const BeamSpec& spec, const TransitionSpec& t);

/// chi_sigma = sqrt(8 sqrt(ln 2)/sqrt(pi)) * sqrt(sigma~_nuc/(hbar w0)), m/sqrt(J).
double chi_sigma(const TransitionSpec& t);

/// chi_source = sqrt(E_pulse/b_r), sqrt(J).
double chi_source(double pulse_energy, double bandwidth_rel);

/// Equivalent closed form sqrt(hbar w N w tau / sqrt(ln 2)); must agree with
/// chi_source for Fourier-limited pulses.
double chi_source_from_photons(double n_photons, double omega, double tau_pulse);

/// Source strength needed for inversion at waist w0: pi w0 / chi_sigma.
double chi_source_necessary(double w0, const TransitionSpec& t);

} // namespace xcav
