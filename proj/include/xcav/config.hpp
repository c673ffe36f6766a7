#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xcav/beam.hpp"
#include "xcav/stack.hpp"

namespace xcav {

struct GridSpec {
    std::size_t n = 1024;            // k-grid points per axis
    std::optional<double> x_span;    // real-space x window, m (sets dkx)
    std::optional<double> y_span;    // real-space y window, m (sets dky)
    double z_min = 0.0;              // m
    double z_max = 0.0;              // m
    std::size_t nz = 1;
    double sigma_cover = 6.0;        // k-coverage in Gaussian widths when spans are derived
};

struct OutputSpec {
    std::string dir = "out";
    bool csv = true;
    bool single_precision = false;   // binary payload complex64 instead of complex128
};

/// Synchrotron-source and depletion inputs for the validity estimators.
struct SourceSpec {
    double flux = 0.0;              // photons/s within the bandwidth
    double bandwidth_ev = 0.0;      // eV
    double pulse_spacing = 0.0;     // s
    double target_thickness = 0.0;  // m
    double number_density = 0.0;    // resonant nuclei per m^3
    double detection_efficiency = 1.0;
    double b_eff = 0.0;             // effective nuclear thickness rate, 1/s
    double sigma_pulse = 0.0;       // pulse duration for the depletion check, s
};

struct ValidateThresholds {
    double depletion_max = 1e-3; // pass if b*sigma below this
    double budget_min = 1e3;     // pass if required/absorbed ratio above this
    double phi_max = 0.1;        // low-excitation regime bound
};

struct ParsedConfig {
    LayerStack stack;
    std::optional<TransitionSpec> transition;
    std::optional<BeamSpec> beam;
    bool beam_theta_auto = false;       // theta_in = auto: use first rocking minimum
    std::vector<double> theta_div_list; // rad; extra divergences for scans
    GridSpec grid;
    OutputSpec output;
    SourceSpec source;
    ValidateThresholds thresholds;
    std::string raw_text;
};

/// Parse the full sectioned config format. Throws config_error with line
/// context on malformed input.
ParsedConfig parse_config(const std::string& text);
ParsedConfig parse_config_file(const std::string& path);

/// Parse only the [stack] section (photon energy + layer lines).
LayerStack parse_stack(const std::string& text);

/// Emit a [stack] section that parses back to an identical stack.
std::string serialize_stack(const LayerStack& stack);

} // namespace xcav
