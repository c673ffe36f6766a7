#include "xcav/validity.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "xcav/errors.hpp"

namespace xcav {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::marginal: return "marginal";
        case Verdict::fail: return "fail";
    }
    return "?";
}

DepletionReport depletion_report(double b_rate, double sigma_pulse,
                                 double gamma_rate, double threshold) {
    if (b_rate < 0.0 || sigma_pulse < 0.0 || gamma_rate <= 0.0)
        throw config_error("depletion report needs b >= 0, sigma >= 0, gamma > 0");
    DepletionReport r;
    r.b_sigma_product = b_rate * sigma_pulse;
    r.time_picture_attenuation =
        1.0 - std::sqrt(consts::pi / 2.0) * r.b_sigma_product;
    r.frequency_attenuation = std::exp(-b_rate / gamma_rate);
    if (r.b_sigma_product < threshold) r.verdict = Verdict::pass;
    else if (r.b_sigma_product < 10.0 * threshold) r.verdict = Verdict::marginal;
    else r.verdict = Verdict::fail;
    return r;
}

InversionBudget inversion_budget(const BeamSpec& spec, const TransitionSpec& t,
                                 double t_res, double rho_res, double threshold) {
    if (spec.theta_in <= 0.0)
        throw numeric_error("inversion budget undefined at zero incidence angle");
    if (t_res <= 0.0 || rho_res < 0.0)
        throw config_error("inversion budget needs positive layer thickness and "
                           "non-negative density");
    const double d = effective_dipole(t);
    const double w02 = spec.w0 * spec.w0;
    InversionBudget b;
    b.n_required = std::sqrt(consts::pi) * consts::pi * consts::pi / 8.0 *
                   consts::c_light * consts::eps0 * consts::hbar * w02 /
                   (t.omega_nuc * spec.tau_pulse * d * d);
    b.n_absorbed = consts::pi * w02 * t_res * rho_res / std::sin(spec.theta_in);
    b.ratio = b.n_absorbed > 0.0 ? b.n_required / b.n_absorbed
                                 : std::numeric_limits<double>::infinity();
    if (b.ratio > threshold) b.verdict = Verdict::pass;
    else if (b.ratio > 0.1 * threshold) b.verdict = Verdict::marginal;
    else b.verdict = Verdict::fail;
    return b;
}

CountRateBenchmark synchrotron_benchmark(double flux, double bandwidth_ev,
                                         double photon_energy_ev,
                                         double pulse_spacing, double w0,
                                         double target_thickness, double rho,
                                         const TransitionSpec& t,
                                         double detection_efficiency,
                                         double phi_max) {
    if (flux < 0.0 || bandwidth_ev <= 0.0 || photon_energy_ev <= 0.0 ||
        pulse_spacing <= 0.0 || w0 <= 0.0)
        throw config_error("synchrotron benchmark needs positive source parameters");
    CountRateBenchmark out;
    const double omega = omega_from_ev(photon_energy_ev);
    out.pulse_energy = flux * pulse_spacing * consts::hbar * omega;
    out.bandwidth_rel = bandwidth_ev / photon_energy_ev;
    out.chi_source = chi_source(out.pulse_energy, out.bandwidth_rel);
    out.pulse_area = chi_sigma(t) / w0 * out.chi_source;
    if (out.pulse_area >= phi_max) {
        std::ostringstream os;
        os << "low-excitation regime violated: pulse area " << out.pulse_area
           << " exceeds " << phi_max;
        throw numeric_error(os.str());
    }
    const double p_exc = 0.5 * out.pulse_area * out.pulse_area;
    const double n_illuminated =
        target_thickness * consts::pi * w0 * w0 * rho;
    out.n_excited = p_exc * n_illuminated;
    out.n_detected = detection_efficiency * out.n_excited / (1.0 + t.alpha_ic);
    return out;
}

} // namespace xcav
