#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "xcav/errors.hpp"
#include "xcav/stack.hpp"

using namespace xcav;
using namespace xcav::testing;

TEST_CASE("sigma0 against direct arithmetic") {
    const TransitionSpec t = fe57();
    // independent evaluation of the closed formula
    const double k0 = t.omega_nuc / consts::c_light;
    const double expect = 2.0 * consts::pi / ((1.0 + 8.6) * k0 * k0) * (4.0 / 2.0);
    CHECK(sigma0(t) == doctest::Approx(expect).epsilon(1e-14));
    // order of magnitude sanity: ~2.5e-22 m^2 for 57Fe
    CHECK(sigma0(t) > 2e-22);
    CHECK(sigma0(t) < 3e-22);
}

TEST_CASE("sigma0 vanishes for infinite internal conversion") {
    TransitionSpec t = fe57();
    double prev = sigma0(t);
    for (double alpha : {1e3, 1e6, 1e9}) {
        t.alpha_ic = alpha;
        double s = sigma0(t);
        CHECK(s < prev);
        prev = s;
    }
    CHECK(prev < 1e-29);
}

TEST_CASE("sigma_tilde / sigma0 equals gamma/(2 omega) for any input") {
    auto gen = rng(7);
    std::uniform_real_distribution<double> e_kev(5.0, 100.0), g_nev(0.1, 100.0),
        alpha(0.0, 20.0), spin(0.0, 4.5);
    for (int i = 0; i < 200; ++i) {
        TransitionSpec t;
        t.omega_nuc = omega_from_ev(e_kev(gen) * 1e3);
        t.gamma_ev = g_nev(gen) * 1e-9;
        t.alpha_ic = alpha(gen);
        t.spin_ground = std::round(spin(gen) * 2.0) / 2.0;
        t.spin_excited = std::round(spin(gen) * 2.0) / 2.0;
        const double want =
            t.gamma_ev * consts::ev_to_joule / (2.0 * consts::hbar * t.omega_nuc);
        CHECK(sigma_tilde(t) / sigma0(t) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("effective dipole limits") {
    TransitionSpec t = fe57();
    SUBCASE("zero linewidth gives zero dipole") {
        t.gamma_ev = 0.0;
        CHECK(effective_dipole(t) == 0.0);
    }
    SUBCASE("doubling 1+alpha scales d by 1/sqrt(2)") {
        const double d0 = effective_dipole(t);
        TransitionSpec t2 = t;
        t2.alpha_ic = 2.0 * (1.0 + t.alpha_ic) - 1.0;
        CHECK(effective_dipole(t2) ==
              doctest::Approx(d0 / std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("57Fe magnitude") {
        // ~3.3e-36 C m for the 14.4 keV line
        CHECK(effective_dipole(t) > 3e-36);
        CHECK(effective_dipole(t) < 4e-36);
    }
}

TEST_CASE("transition lifetime is hbar/gamma") {
    const TransitionSpec t = fe57();
    // 4.66 neV corresponds to ~141 ns
    CHECK(t.lifetime() == doctest::Approx(141e-9).epsilon(0.01));
}

TEST_CASE("stack depth map is a bijection") {
    const LayerStack s = ptc_cavity();
    CHECK(s.total_thickness() == doctest::Approx(16.5e-9));
    // interface depths strictly increasing
    for (std::size_t i = 1; i < s.interface_depths().size(); ++i)
        CHECK(s.interface_depth(i) > s.interface_depth(i - 1));
    // round-trip z -> (layer, offset) -> z over the whole interior
    for (double z = 0.0; z <= s.total_thickness(); z += 0.1e-9) {
        const auto [layer, u] = s.locate(z);
        CHECK(s.depth_of(layer, u) == doctest::Approx(z).epsilon(1e-14));
        if (layer > 0) {
            CHECK(u >= 0.0);
            CHECK(u <= *s.layers()[layer].thickness + 1e-18);
        }
    }
    CHECK(s.resonant_center_depth() == doctest::Approx(9.5e-9));
    CHECK(s.resonant_layer_thickness() == doctest::Approx(2e-9));
}

TEST_CASE("stack validation rejects bad geometries") {
    using xcav::testing::layer;
    CHECK_THROWS_AS(LayerStack({layer("a", std::nullopt, 0, 0)}, 14.4e3),
                    config_error);
    CHECK_THROWS_AS(LayerStack({layer("a", 1e-9, 0, 0),
                                layer("b", std::nullopt, 0, 0)},
                               14.4e3),
                    config_error);
    CHECK_THROWS_AS(LayerStack({layer("a", std::nullopt, 0, 0),
                                layer("b", -1e-9, 0, 0),
                                layer("c", std::nullopt, 0, 0)},
                               14.4e3),
                    config_error);
    CHECK_THROWS_AS(LayerStack({layer("a", std::nullopt, 0, 0),
                                layer("b", std::nullopt, 0, 0)},
                               -1.0),
                    config_error);
}

TEST_CASE("two-layer vacuum stack is valid with zero indices") {
    const LayerStack s = vacuum_stack(0);
    CHECK(s.size() == 2);
    for (const auto& l : s.layers()) {
        CHECK(l.material.delta == 0.0);
        CHECK(l.material.beta == 0.0);
    }
}
