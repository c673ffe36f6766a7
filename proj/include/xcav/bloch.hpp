#pragma once

#include <vector>

#include "xcav/beam.hpp"
#include "xcav/grid.hpp"
#include "xcav/stack.hpp"

namespace xcav {

/// Two-level expectation values. sigma_minus is stored in the frame rotating
/// at omega_nuc (carrier removed); lab-frame sigma^- is
/// sigma_minus * e^{-i omega_nuc t}.
struct BlochState {
    double sigma_z = -1.0;
    cplx sigma_minus{0.0, 0.0};
    double time = 0.0;

    /// (sigma_z)^2 + 4 |sigma_-|^2; equals 1 for pure states.
    double purity() const {
        return sigma_z * sigma_z + 4.0 * std::norm(sigma_minus);
    }
};

/// Total pulse area from the resonant Fourier amplitude of the physical
/// driving field: Phi = (4pi/hbar) |d E_res|. E_res is the Fourier transform
/// of the real field; for a narrowband phasor spectrum E~ it equals E~/2.
double pulse_area_from_field(cplx e_res, double dipole);

/// Closed-form pulse-area-theorem state after accumulated area Phi with
/// envelope phase phi_n, evaluated at time t from a ground-state start.
BlochState area_theorem_state(double phi_total, double phi_n, double omega_nuc,
                              double t);

struct BlochOdeOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    double initial_dt_fraction = 1e-3; // of the sampled span
};

/// Integrate the excitation-phase optical Bloch equations in the rotating
/// frame for a sampled complex Rabi envelope Omega~(t) (rad/s):
///   d(sigma_-)/dt = -i Omega~ sigma_z,
///   d(sigma_z)/dt = 2i (Omega~ sigma_+ - Omega~* sigma_-).
/// drive and t_grid have equal sizes (>= 2, strictly increasing); the drive
/// is interpolated with a local cubic between samples. Returns the state at
/// every grid time, starting from the ground state.
std::vector<BlochState> bloch_ode_solve(double omega_nuc,
                                        const std::vector<cplx>& drive,
                                        const std::vector<double>& t_grid,
                                        const BlochOdeOptions& opts = {});

/// sigma_z map over the resonant layer from a synthesized slab at omega_nuc:
/// per cell Phi = (4pi/hbar)|d E~/2| then sigma_z = -cos(Phi).
InversionMap inversion_map(const FieldMap& field, const BeamSpec& spec,
                           const TransitionSpec& t);

} // namespace xcav
