#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xcav/constants.hpp"

namespace xcav {

/// Complex refractive index decomposition n = 1 - delta + i*beta at a fixed
/// photon energy. Vacuum is delta = beta = 0.
struct MaterialIndex {
    double delta = 0.0;
    double beta = 0.0;

    cplx refractive_index() const { return {1.0 - delta, beta}; }
};

/// One homogeneous layer. The first and last layers of a stack are
/// semi-infinite and carry no thickness.
struct Layer {
    std::string name;
    std::optional<double> thickness; // m; unset for the two boundary layers
    MaterialIndex material;
    bool resonant = false;
};

/// Two-level resonance parameters of the doped layer.
struct TransitionSpec {
    double omega_nuc = 0.0;  // rad/s
    double gamma_ev = 0.0;   // natural linewidth, eV
    double alpha_ic = 0.0;   // internal conversion coefficient
    double spin_ground = 0.0;
    double spin_excited = 0.0;

    double lifetime() const; // hbar/gamma, s
    void validate() const;   // throws config_error on bad parameters
};

/// Nuclear absorption cross-section sigma_0 (m^2).
double sigma0(const TransitionSpec& t);

/// Linewidth-weighted cross-section sigma~_nuc = sigma_0 * gamma/(2 w_nuc) (m^2).
/// Implemented from its own closed form, independently of sigma0().
double sigma_tilde(const TransitionSpec& t);

/// Effective dipole moment d = sqrt(sigma~_nuc * c hbar eps0) (C m).
double effective_dipole(const TransitionSpec& t);

/// Ordered top-to-bottom multilayer. Depth coordinate z is 0 at the first
/// interface (below the semi-infinite top layer) and increases downward.
class LayerStack {
public:
    LayerStack() = default;
    LayerStack(std::vector<Layer> layers, double photon_energy_ev);

    const std::vector<Layer>& layers() const { return layers_; }
    double photon_energy_ev() const { return photon_energy_ev_; }
    double omega() const { return omega_from_ev(photon_energy_ev_); }
    double wavenumber() const { return wavenumber_from_ev(photon_energy_ev_); }

    std::size_t size() const { return layers_.size(); }

    /// Depth of interface i (between layer i and layer i+1), i in [0, size-2].
    double interface_depth(std::size_t i) const { return interface_depths_[i]; }
    const std::vector<double>& interface_depths() const { return interface_depths_; }

    /// Total thickness of the interior (finite) layers.
    double total_thickness() const { return interface_depths_.back(); }

    /// Index of the layer containing depth z (boundaries belong to the upper
    /// layer, z < 0 to the top semi-infinite layer).
    std::size_t layer_at(double z) const;

    /// Global depth of (layer index, offset from layer top). Inverse of
    /// locate(). Boundary layers accept offset 0 only at their interface.
    double depth_of(std::size_t layer, double offset) const;

    /// (layer index, offset from layer top) for a global depth.
    std::pair<std::size_t, double> locate(double z) const;

    bool has_resonant_layer() const;
    std::size_t resonant_layer_index() const; // throws config_error if none
    double resonant_center_depth() const;
    double resonant_layer_thickness() const;

    /// Structural invariants; collects human-readable problems.
    std::vector<std::string> problems() const;
    void validate() const; // throws config_error listing all problems

private:
    std::vector<Layer> layers_;
    double photon_energy_ev_ = 0.0;
    std::vector<double> interface_depths_;
};

} // namespace xcav
