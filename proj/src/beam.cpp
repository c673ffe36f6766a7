#include "xcav/beam.hpp"

#include <cmath>

#include "xcav/errors.hpp"

namespace xcav {

namespace {
const double sqrt_ln2 = std::sqrt(std::log(2.0));
const double sqrt_pi = std::sqrt(consts::pi);
} // namespace

BeamSpec BeamSpec::from_photons(double omega, double w0, double theta_in,
                                double n_photons, double tau_pulse) {
    if (omega <= 0.0 || w0 <= 0.0)
        throw config_error("beam needs positive carrier frequency and waist");
    if (n_photons < 0.0 || tau_pulse <= 0.0)
        throw config_error("beam needs n_photons >= 0 and positive pulse duration");
    BeamSpec s;
    s.omega = omega;
    s.w0 = w0;
    s.theta_in = theta_in;
    s.n_photons = n_photons;
    s.tau_pulse = tau_pulse;
    s.pulse_energy = n_photons * consts::hbar * omega;
    s.bandwidth_rel = sqrt_ln2 / (tau_pulse * omega);
    return s;
}

BeamSpec BeamSpec::from_energy(double omega, double w0, double theta_in,
                               double pulse_energy, double bandwidth_rel) {
    if (bandwidth_rel <= 0.0)
        throw config_error("relative bandwidth must be positive");
    double tau = sqrt_ln2 / (bandwidth_rel * omega);
    BeamSpec s = from_photons(omega, w0, theta_in,
                              pulse_energy / (consts::hbar * omega), tau);
    // store the given pair verbatim so round-trips are idempotent
    s.pulse_energy = pulse_energy;
    s.bandwidth_rel = bandwidth_rel;
    return s;
}

double BeamSpec::waist_from_divergence(double omega, double theta_div) {
    if (theta_div <= 0.0) throw config_error("divergence must be positive");
    return 2.0 * consts::c_light / (omega * theta_div);
}

std::vector<std::string> BeamSpec::warnings() const {
    std::vector<std::string> out;
    const double lambda = 2.0 * consts::pi / wavenumber();
    if (w0 < 10.0 * lambda)
        out.push_back("waist below 10 wavelengths; paraxial and normalization "
                      "assumptions degrade");
    return out;
}

cplx SpectralEnvelope::operator()(double omega) const {
    double d = omega - omega0;
    return A0 / (2.0 * consts::pi) * std::exp(-0.5 * tau * tau * d * d);
}

SpectralEnvelope normalize_amplitude(const BeamSpec& spec) {
    SpectralEnvelope env;
    env.tau = spec.tau_pulse;
    env.omega0 = spec.omega;
    env.A0 = std::sqrt(2.0 * spec.n_photons * consts::hbar * spec.omega *
                       spec.tau_pulse /
                       (consts::pi * consts::pi * sqrt_pi * consts::eps0 *
                        spec.w0 * spec.w0 * consts::c_light));
    return env;
}

cplx angular_spectrum_pulse_frame(const BeamSpec& spec, double kx_perp,
                                  double ky_perp, double z_p, double omega) {
    const double k = omega / consts::c_light;
    const double kperp2 = kx_perp * kx_perp + ky_perp * ky_perp;
    if (kperp2 > k * k)
        throw numeric_error("angular spectrum requested off shell (|k_perp| > k)");
    const double kz = std::sqrt(k * k - kperp2);
    const SpectralEnvelope env = normalize_amplitude(spec);
    const double w0 = spec.w0;
    return env(omega) * (w0 * w0 / 2.0) * std::exp(-w0 * w0 * kperp2 / 4.0) *
           std::exp(cplx(0.0, z_p * kz));
}

cplx paraxial_field(const BeamSpec& spec, double x_p, double y_p, double z_p,
                    double omega) {
    const double k = omega / consts::c_light;
    const double w0 = spec.w0;
    const double zR = 0.5 * k * w0 * w0;
    const double wz = w0 * std::sqrt(1.0 + (z_p / zR) * (z_p / zR));
    const double psi = std::atan2(z_p, zR);
    const double rp2 = x_p * x_p + y_p * y_p;
    const SpectralEnvelope env = normalize_amplitude(spec);
    cplx curvature(1.0, 0.0);
    if (z_p != 0.0) {
        const double R = z_p * (1.0 + (zR / z_p) * (zR / z_p));
        curvature = std::exp(cplx(0.0, k * rp2 / (2.0 * R)));
    }
    return 2.0 * consts::pi * env(omega) * (w0 / wz) *
           std::exp(cplx(0.0, k * z_p)) * std::exp(-rp2 / (wz * wz)) *
           std::exp(cplx(0.0, -psi)) * curvature;
}

double peak_pulse_area(const BeamSpec& spec, const TransitionSpec& t) {
    const SpectralEnvelope env = normalize_amplitude(spec);
    const double d = effective_dipole(t);
    return 2.0 * consts::pi / consts::hbar * d * env.A0 * spec.alignment_cos;
}

double chi_sigma(const TransitionSpec& t) {
    const double prefactor = std::sqrt(8.0 * sqrt_ln2 / sqrt_pi);
    return prefactor * std::sqrt(sigma_tilde(t) / (consts::hbar * t.omega_nuc));
}

double chi_source(double pulse_energy, double bandwidth_rel) {
    if (bandwidth_rel <= 0.0)
        throw config_error("relative bandwidth must be positive");
    return std::sqrt(pulse_energy / bandwidth_rel);
}

double chi_source_from_photons(double n_photons, double omega, double tau_pulse) {
    return std::sqrt(consts::hbar * omega * n_photons * omega * tau_pulse / sqrt_ln2);
}

double chi_source_necessary(double w0, const TransitionSpec& t) {
    return consts::pi * w0 / chi_sigma(t);
}

} // namespace xcav
