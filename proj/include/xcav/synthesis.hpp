#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "xcav/cavity.hpp"
#include "xcav/grid.hpp"
#include "xcav/rotation.hpp"

namespace xcav {

struct SynthesisOptions {
    unsigned threads = 1;
    /// Receives human-readable diagnostics (grid warnings etc.); may be empty.
    std::function<void(const std::string&)> warn;
};

/// Estimated k-space half width of the narrowest rocking feature near
/// theta_in, used for the Nyquist warning; 0 when no feature is found.
double mode_ridge_halfwidth(const LayerStack& stack, double omega, double theta_in);

/// Field map over (x, z) at y = 0: one Fourier synthesis per requested depth,
///   E(x, z) = sum_k E0_s(z, k) E_in(k) e^{i k_par r_par} dkx dky.
FieldMap synthesize_field(const CavityAngularSpectrum& spectrum,
                          const LayerStack& stack, const std::vector<double>& z_list,
                          double omega, const SynthesisOptions& opts = {});

/// Full (x, y) slab at one depth via a 2D FFT.
FieldMap synthesize_slab(const CavityAngularSpectrum& spectrum,
                         const LayerStack& stack, double z, double omega,
                         const SynthesisOptions& opts = {});

/// Collimated-limit shortcut: E(r) ~ E0_s(z, k_in) * envelope(x, y). Refuses
/// (numeric_error) when the mode function varies by more than max_variation
/// over the spectrum support.
FieldMap collimated_field(const BeamSpec& spec, const LayerStack& stack,
                          const std::vector<double>& z_list, double omega,
                          const KGridGeometry& geom,
                          double max_variation = 0.01,
                          const SynthesisOptions& opts = {});

/// Measured relative variation of the mode function across the +-2 sigma
/// spectrum support at the probe depth (resonant layer center when present).
double collimated_mode_variation(const BeamSpec& spec, const LayerStack& stack,
                                 double omega);

/// Cavity field enhancement: peak |E| within the resonant layer divided by
/// the free-space focus peak of the same normalized pulse.
double enhancement_factor(const FieldMap& field, const LayerStack& stack,
                          const BeamSpec& beam);

/// Batch synthesis over beam divergences sharing the stack; grids are derived
/// per item from the same GridSpec-style inputs.
struct DivergenceScanItem {
    double theta_div = 0.0;
    FieldMap field;
};

std::vector<DivergenceScanItem> field_scan_divergence(
    const BeamSpec& base, const LayerStack& stack,
    const std::vector<double>& theta_div_list, const std::vector<double>& z_list,
    double omega, std::size_t n, double sigma_cover,
    std::optional<double> x_span, std::optional<double> y_span,
    const SynthesisOptions& opts = {});

} // namespace xcav
