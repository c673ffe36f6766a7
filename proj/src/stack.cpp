#include "xcav/stack.hpp"

#include <cmath>
#include <sstream>

#include "xcav/errors.hpp"

namespace xcav {

double TransitionSpec::lifetime() const {
    return consts::hbar / (gamma_ev * consts::ev_to_joule);
}

void TransitionSpec::validate() const {
    std::ostringstream bad;
    if (!(omega_nuc > 0.0)) bad << "transition energy must be positive; ";
    if (!(gamma_ev > 0.0)) bad << "linewidth must be positive; ";
    if (alpha_ic < 0.0) bad << "internal conversion coefficient must be >= 0; ";
    auto degeneracy_ok = [](double spin) {
        double g = 2.0 * spin + 1.0;
        return g > 0.0 && std::abs(g - std::round(g)) < 1e-9;
    };
    if (!degeneracy_ok(spin_ground) || !degeneracy_ok(spin_excited))
        bad << "spins must give positive integer degeneracies 2I+1; ";
    std::string msg = bad.str();
    if (!msg.empty()) throw config_error("invalid transition: " + msg);
}

double sigma0(const TransitionSpec& t) {
    const double k0 = t.omega_nuc / consts::c_light;
    const double deg = (2.0 * t.spin_excited + 1.0) / (2.0 * t.spin_ground + 1.0);
    return 2.0 * consts::pi / ((1.0 + t.alpha_ic) * k0 * k0) * deg;
}

double sigma_tilde(const TransitionSpec& t) {
    const double k0 = t.omega_nuc / consts::c_light;
    const double deg = (2.0 * t.spin_excited + 1.0) / (2.0 * t.spin_ground + 1.0);
    const double gamma_over_2w = t.gamma_ev * consts::ev_to_joule /
                                 (2.0 * consts::hbar * t.omega_nuc);
    return 2.0 * consts::pi / ((1.0 + t.alpha_ic) * k0 * k0) * deg * gamma_over_2w;
}

double effective_dipole(const TransitionSpec& t) {
    return std::sqrt(sigma_tilde(t) * consts::c_light * consts::hbar * consts::eps0);
}

LayerStack::LayerStack(std::vector<Layer> layers, double photon_energy_ev)
    : layers_(std::move(layers)), photon_energy_ev_(photon_energy_ev) {
    validate();
    interface_depths_.clear();
    interface_depths_.push_back(0.0);
    for (std::size_t j = 1; j + 1 < layers_.size(); ++j)
        interface_depths_.push_back(interface_depths_.back() + *layers_[j].thickness);
}

std::vector<std::string> LayerStack::problems() const {
    std::vector<std::string> out;
    if (photon_energy_ev_ <= 0.0) out.push_back("photon energy must be positive");
    if (layers_.size() < 2) {
        out.push_back("stack needs at least the two semi-infinite boundary layers");
        return out;
    }
    if (layers_.front().thickness)
        out.push_back("first layer '" + layers_.front().name + "' must be semi-infinite");
    if (layers_.back().thickness)
        out.push_back("last layer '" + layers_.back().name + "' must be semi-infinite");
    for (std::size_t j = 1; j + 1 < layers_.size(); ++j) {
        const Layer& l = layers_[j];
        if (!l.thickness)
            out.push_back("interior layer '" + l.name + "' needs a finite thickness");
        else if (!(*l.thickness > 0.0))
            out.push_back("layer '" + l.name + "' has non-positive thickness");
    }
    for (const Layer& l : layers_)
        if (l.material.beta < 0.0)
            out.push_back("layer '" + l.name + "' has negative absorption index");
    return out;
}

void LayerStack::validate() const {
    auto bad = problems();
    if (bad.empty()) return;
    std::string msg = "invalid stack:";
    for (const auto& b : bad) msg += "\n  - " + b;
    throw config_error(msg);
}

std::size_t LayerStack::layer_at(double z) const {
    if (z < 0.0) return 0;
    for (std::size_t i = 1; i < interface_depths_.size(); ++i)
        if (z <= interface_depths_[i]) return i;
    return layers_.size() - 1;
}

double LayerStack::depth_of(std::size_t layer, double offset) const {
    if (layer == 0) return -offset;
    if (layer >= layers_.size())
        throw config_error("layer index out of range");
    return interface_depths_[layer - 1] + offset;
}

std::pair<std::size_t, double> LayerStack::locate(double z) const {
    std::size_t j = layer_at(z);
    if (j == 0) return {0, z}; // offset measured from the first interface, negative
    return {j, z - interface_depths_[j - 1]};
}

bool LayerStack::has_resonant_layer() const {
    for (const Layer& l : layers_)
        if (l.resonant) return true;
    return false;
}

std::size_t LayerStack::resonant_layer_index() const {
    for (std::size_t j = 0; j < layers_.size(); ++j)
        if (layers_[j].resonant) return j;
    throw config_error("stack has no resonant layer");
}

double LayerStack::resonant_center_depth() const {
    std::size_t j = resonant_layer_index();
    if (j == 0 || j + 1 == layers_.size())
        throw config_error("resonant layer must be an interior layer");
    return interface_depths_[j - 1] + 0.5 * *layers_[j].thickness;
}

double LayerStack::resonant_layer_thickness() const {
    std::size_t j = resonant_layer_index();
    if (j == 0 || j + 1 == layers_.size())
        throw config_error("resonant layer must be an interior layer");
    return *layers_[j].thickness;
}

} // namespace xcav
