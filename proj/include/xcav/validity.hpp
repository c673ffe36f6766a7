#pragma once

#include "xcav/beam.hpp"
#include "xcav/config.hpp"
#include "xcav/stack.hpp"

namespace xcav {

enum class Verdict { pass, marginal, fail };

const char* to_string(Verdict v);

/// Low-depletion estimates in the time and frequency pictures.
struct DepletionReport {
    double b_sigma_product = 0.0;        // b(z) * sigma_pulse
    double time_picture_attenuation = 0.0;   // 1 - sqrt(pi/2) b sigma
    double frequency_attenuation = 0.0;      // e^{-b/gamma}
    Verdict verdict = Verdict::fail;
};

DepletionReport depletion_report(double b_rate, double sigma_pulse,
                                 double gamma_rate, double threshold = 1e-3);

/// Photons required for inversion vs excitations absorbed by the layer.
struct InversionBudget {
    double n_required = 0.0;
    double n_absorbed = 0.0;
    double ratio = 0.0; // +inf reported as such when the density vanishes
    Verdict verdict = Verdict::fail;
};

InversionBudget inversion_budget(const BeamSpec& spec, const TransitionSpec& t,
                                 double t_res, double rho_res,
                                 double threshold = 1e3);

/// Synchrotron count-rate benchmark in the low-excitation regime.
struct CountRateBenchmark {
    double chi_source = 0.0;       // sqrt(J)
    double pulse_area = 0.0;       // at waist w0
    double n_excited = 0.0;        // per pulse
    double n_detected = 0.0;       // per pulse, after internal conversion
    double pulse_energy = 0.0;     // J
    double bandwidth_rel = 0.0;
};

/// Throws numeric_error when the low-excitation bound (Phi < phi_max) fails.
CountRateBenchmark synchrotron_benchmark(double flux, double bandwidth_ev,
                                         double photon_energy_ev,
                                         double pulse_spacing, double w0,
                                         double target_thickness, double rho,
                                         const TransitionSpec& t,
                                         double detection_efficiency = 1.0,
                                         double phi_max = 0.1);

} // namespace xcav
