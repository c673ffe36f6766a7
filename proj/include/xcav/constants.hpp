#pragma once

#include <complex>

// Conventions used throughout the library:
//
//   * SI units internally; angles in radians (milliradians only at the CLI),
//     energies converted to joules at parse time.
//   * Complex phasor fields: the physical field is Re[E~].
//   * Fourier transform pair:  E(w) = (1/2pi) Int dt e^{+iwt} E(t),
//                              E(t) = Int dw e^{-iwt} E(w).
//     Frequency-domain amplitudes therefore carry units of (V/m)*s.
//   * Cavity coordinates: z = 0 at the top vacuum/cladding interface,
//     z increasing downward into the stack.
//   * Overall phase reference: zero carrier phase at the beam focus on axis
//     (the spectral peak amplitude A0 is taken real positive).

namespace xcav {

using cplx = std::complex<double>;

namespace consts {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double c_light = 2.99792458e8;     // m/s
inline constexpr double eps0 = 8.8541878128e-12;    // F/m
inline constexpr double e_charge = 1.602176634e-19; // C (also J per eV)

inline constexpr double ev_to_joule = e_charge;

} // namespace consts

/// Angular frequency (rad/s) of a photon of the given energy in eV.
inline double omega_from_ev(double energy_ev) {
    return energy_ev * consts::ev_to_joule / consts::hbar;
}

/// Vacuum wavenumber (rad/m) of a photon of the given energy in eV.
inline double wavenumber_from_ev(double energy_ev) {
    return omega_from_ev(energy_ev) / consts::c_light;
}

} // namespace xcav
