#include <doctest.h>

#include <fstream>

#include "test_helpers.hpp"
#include "xcav/config.hpp"
#include "xcav/errors.hpp"

using namespace xcav;

namespace {

const char* ptc_text = R"(# IV.C benchmark cavity
[stack]
photon_energy = 14.4 keV
layer = vacuum inf 0 0
layer = Pt 2.5 nm 1.71715e-5 1.697e-6
layer = C 6 nm 2.2604e-6 6.1e-10
layer = Fe57 2 nm 7.34e-6 3.40e-7 resonant
layer = C 6 nm 2.2604e-6 6.1e-10
layer = Pt inf 1.71715e-5 1.697e-6
)";

} // namespace

TEST_CASE("parse the IV.C cavity text") {
    const LayerStack s = parse_stack(ptc_text);
    CHECK(s.size() == 6);
    CHECK(s.photon_energy_ev() == doctest::Approx(14.4e3));
    CHECK(s.layers()[1].name == "Pt");
    CHECK(s.layers()[1].thickness.value() == doctest::Approx(2.5e-9));
    CHECK(s.layers()[3].resonant);
    CHECK(s.resonant_center_depth() == doctest::Approx(9.5e-9));
}

TEST_CASE("parse the IV.D.1 cavity line with glued units") {
    const LayerStack s = parse_stack(R"(
[stack]
photon_energy = 14.4keV
layer = vacuum inf 0 0
layer = Pd 1.87nm 1.04054e-5 3.38e-7
layer = C 4.37nm 2.2604e-6 6.1e-10
layer = Fe57 1nm 7.34e-6 3.40e-7 resonant
layer = C 3.5nm 2.2604e-6 6.1e-10
layer = Pd inf 1.04054e-5 3.38e-7
)");
    CHECK(s.size() == 6);
    CHECK(s.total_thickness() == doctest::Approx(10.74e-9));
    CHECK(s.resonant_center_depth() == doctest::Approx(6.74e-9));
}

TEST_CASE("stack serialization round-trips to an identical stack") {
    const LayerStack s = parse_stack(ptc_text);
    const LayerStack s2 = parse_stack(serialize_stack(s));
    REQUIRE(s2.size() == s.size());
    CHECK(s2.photon_energy_ev() == s.photon_energy_ev());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s2.layers()[i].name == s.layers()[i].name);
        CHECK(s2.layers()[i].resonant == s.layers()[i].resonant);
        CHECK(s2.layers()[i].material.delta == s.layers()[i].material.delta);
        CHECK(s2.layers()[i].material.beta == s.layers()[i].material.beta);
        CHECK(s2.layers()[i].thickness.has_value() ==
              s.layers()[i].thickness.has_value());
        if (s.layers()[i].thickness)
            CHECK(*s2.layers()[i].thickness ==
                  doctest::Approx(*s.layers()[i].thickness).epsilon(1e-15));
    }
}

TEST_CASE("config errors carry line context") {
    SUBCASE("malformed number") {
        try {
            parse_stack("[stack]\nphoton_energy = 14.4 keV\nlayer = Pt 2.5nm abc 0\n");
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SUBCASE("missing boundary layer") {
        CHECK_THROWS_AS(parse_stack("[stack]\nphoton_energy = 1 keV\n"
                                    "layer = a 1nm 0 0\nlayer = b inf 0 0\n"),
                        config_error);
    }
    SUBCASE("non-positive thickness") {
        CHECK_THROWS_AS(parse_stack("[stack]\nphoton_energy = 1 keV\n"
                                    "layer = a inf 0 0\nlayer = b 0nm 0 0\n"
                                    "layer = c inf 0 0\n"),
                        config_error);
    }
    SUBCASE("unknown unit") {
        CHECK_THROWS_AS(parse_stack("[stack]\nphoton_energy = 14.4 parsec\n"
                                    "layer = a inf 0 0\nlayer = b inf 0 0\n"),
                        config_error);
    }
}

TEST_CASE("full config with beam, transition, grid") {
    const std::string text = std::string(ptc_text) + R"(
[transition]
energy = 14.4 keV
linewidth = 4.66 neV
alpha_ic = 8.6
spin_ground = 0.5
spin_excited = 1.5

[beam]
theta_in = 3.3579 mrad
theta_div = 1.1 mrad
pulse_energy = 3.1008e-14 J
bandwidth_rel = 6.9444e-8
focus = 0 0 0 nm

[grid]
n = 256
x_span = 96 um
z_min = -100 nm
z_max = 100 nm
nz = 41

[output]
dir = out_test
csv = false
)";
    const ParsedConfig cfg = parse_config(text);
    REQUIRE(cfg.beam.has_value());
    REQUIRE(cfg.transition.has_value());
    CHECK(cfg.beam->theta_in == doctest::Approx(3.3579e-3));
    CHECK(cfg.beam->w0 ==
          doctest::Approx(2.0 / (cfg.beam->wavenumber() * 1.1e-3)).epsilon(1e-12));
    CHECK(cfg.beam->n_photons == doctest::Approx(3.1008e-14 / (consts::hbar * cfg.beam->omega)));
    CHECK(cfg.grid.n == 256);
    CHECK(cfg.grid.x_span.value() == doctest::Approx(96e-6));
    CHECK(cfg.grid.nz == 41);
    CHECK(cfg.output.dir == "out_test");
    CHECK_FALSE(cfg.output.csv);

    SUBCASE("beam pulse pairs are mutually consistent") {
        const BeamSpec round = BeamSpec::from_photons(
            cfg.beam->omega, cfg.beam->w0, cfg.beam->theta_in, cfg.beam->n_photons,
            cfg.beam->tau_pulse);
        CHECK(round.pulse_energy ==
              doctest::Approx(cfg.beam->pulse_energy).epsilon(1e-12));
        CHECK(round.bandwidth_rel ==
              doctest::Approx(cfg.beam->bandwidth_rel).epsilon(1e-12));
    }
}

TEST_CASE("beam requires exactly one pulse pair") {
    const std::string head = std::string(ptc_text) + "\n[beam]\ntheta_in = 3 mrad\n"
                                                     "theta_div = 1 mrad\n";
    CHECK_THROWS_AS(parse_config(head), config_error);
    CHECK_THROWS_AS(parse_config(head + "n_photons = 1e5\ntau = 1 ps\n"
                                        "pulse_energy = 1 nJ\nbandwidth_rel = 1e-7\n"),
                    config_error);
    CHECK_NOTHROW(parse_config(head + "n_photons = 1e5\ntau = 1 ps\n"));
}

TEST_CASE("shipped example configs parse") {
    for (const char* name :
         {"cavity_ivc.cfg", "cavity_ivd1.cfg", "free_space.cfg",
          "double_cavity.cfg", "petra_p01.cfg"}) {
        const std::string path = std::string(XCAV_CONFIG_DIR) + "/" + name;
        std::ifstream f(path);
        REQUIRE_MESSAGE(f.good(), path);
        CHECK_NOTHROW(parse_config_file(path));
    }
}
