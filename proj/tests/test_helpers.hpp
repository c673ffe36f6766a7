#pragma once

#include <cmath>
#include <random>
#include <string>

#include "xcav/stack.hpp"

namespace xcav::testing {

/// 57Fe at 14.4 keV as used by the shipped configs.
inline TransitionSpec fe57() {
    TransitionSpec t;
    t.omega_nuc = omega_from_ev(14.4e3);
    t.gamma_ev = 4.66e-9;
    t.alpha_ic = 8.6;
    t.spin_ground = 0.5;
    t.spin_excited = 1.5;
    return t;
}

// refractive-index values shipped with the example configs (14.4 keV)
inline constexpr double delta_pt = 1.71715e-5, beta_pt = 1.697e-6;
inline constexpr double delta_c = 2.2604e-6, beta_c = 6.1e-10;
inline constexpr double delta_fe = 7.3400e-6, beta_fe = 3.40e-7;
inline constexpr double delta_pd = 1.04054e-5, beta_pd = 3.38e-7;

inline Layer layer(const std::string& name, std::optional<double> t, double d,
                   double b, bool resonant = false) {
    Layer l;
    l.name = name;
    l.thickness = t;
    l.material = {d, b};
    l.resonant = resonant;
    return l;
}

/// Pt(2.5)/C(6)/57Fe(2)/C(6)/Pt cavity.
inline LayerStack ptc_cavity() {
    return LayerStack({layer("vacuum", std::nullopt, 0, 0),
                       layer("Pt", 2.5e-9, delta_pt, beta_pt),
                       layer("C", 6e-9, delta_c, beta_c),
                       layer("Fe57", 2e-9, delta_fe, beta_fe, true),
                       layer("C", 6e-9, delta_c, beta_c),
                       layer("Pt", std::nullopt, delta_pt, beta_pt)},
                      14.4e3);
}

/// Pd(1.87)/C(4.37)/57Fe(1)/C(3.5)/Pd cavity.
inline LayerStack pdc_cavity() {
    return LayerStack({layer("vacuum", std::nullopt, 0, 0),
                       layer("Pd", 1.87e-9, delta_pd, beta_pd),
                       layer("C", 4.37e-9, delta_c, beta_c),
                       layer("Fe57", 1e-9, delta_fe, beta_fe, true),
                       layer("C", 3.5e-9, delta_c, beta_c),
                       layer("Pd", std::nullopt, delta_pd, beta_pd)},
                      14.4e3);
}

inline LayerStack vacuum_stack(std::size_t interior = 2) {
    std::vector<Layer> layers;
    layers.push_back(layer("vacuum", std::nullopt, 0, 0));
    for (std::size_t i = 0; i < interior; ++i)
        layers.push_back(layer("vacuum", 5e-9, 0, 0));
    layers.push_back(layer("vacuum", std::nullopt, 0, 0));
    return LayerStack(layers, 14.4e3);
}

inline std::mt19937_64 rng(std::uint64_t seed = 0x5eed) {
    return std::mt19937_64(seed);
}

} // namespace xcav::testing
