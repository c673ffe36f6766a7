#include "xcav/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "xcav/bloch.hpp"
#include "xcav/cavity.hpp"
#include "xcav/config.hpp"
#include "xcav/errors.hpp"
#include "xcav/io.hpp"
#include "xcav/manifest.hpp"
#include "xcav/synthesis.hpp"
#include "xcav/validity.hpp"

namespace xcav {

namespace {

namespace fs = std::filesystem;
using clock_t_ = std::chrono::steady_clock;

struct Run {
    ParsedConfig cfg;
    std::string out_dir;
    RunManifest manifest;
    clock_t_::time_point started = clock_t_::now();

    std::string path(const std::string& name) const {
        return (fs::path(out_dir) / name).string();
    }
    void finish(const std::string& manifest_name = "manifest.json") {
        manifest.wall_seconds =
            std::chrono::duration<double>(clock_t_::now() - started).count();
        write_manifest(path(manifest_name), manifest);
    }
};

Run open_run(const std::string& command, const CliOptions& opts) {
    Run run;
    run.cfg = parse_config_file(opts.config_path);
    if (opts.grid_n) run.cfg.grid.n = *opts.grid_n;
    run.out_dir = opts.out_dir.value_or(run.cfg.output.dir);
    std::error_code ec;
    fs::create_directories(run.out_dir, ec);
    if (ec) throw io_error("cannot create output directory '" + run.out_dir + "'");
    run.manifest.command = command;
    run.manifest.config_path = opts.config_path;
    run.manifest.config_hash =
        hex64(fnv1a(run.cfg.raw_text.data(), run.cfg.raw_text.size()));
    return run;
}

double max_delta(const LayerStack& stack) {
    double d = 0.0;
    for (const auto& l : stack.layers()) d = std::max(d, l.material.delta);
    return d;
}

/// Resolve theta_in = auto to the first rocking minimum.
void resolve_theta(Run& run) {
    if (!run.cfg.beam) return;
    if (!run.cfg.beam_theta_auto) {
        if (run.cfg.beam->theta_in <= 0.0)
            throw config_error("[beam] theta_in must be positive (or 'auto')");
        return;
    }
    const double theta_c = std::sqrt(2.0 * max_delta(run.cfg.stack));
    if (theta_c <= 0.0)
        throw config_error("theta_in = auto needs a refracting stack");
    const auto [theta, refl] = first_rocking_minimum(
        run.cfg.stack, run.cfg.stack.omega(), 1e-4, 3.0 * theta_c);
    (void)refl;
    run.cfg.beam->theta_in = theta;
}

std::vector<double> z_grid(const GridSpec& g) {
    std::vector<double> z(g.nz);
    if (g.nz == 1) {
        z[0] = 0.5 * (g.z_min + g.z_max);
        return z;
    }
    const double dz = (g.z_max - g.z_min) / static_cast<double>(g.nz - 1);
    for (std::size_t i = 0; i < g.nz; ++i)
        z[i] = g.z_min + static_cast<double>(i) * dz;
    return z;
}

SynthesisOptions synth_opts(const CliOptions& opts) {
    SynthesisOptions so;
    so.threads = opts.threads;
    if (!opts.quiet)
        so.warn = [](const std::string& msg) { std::cerr << "warning: " << msg << "\n"; };
    return so;
}

void record_grid_params(Run& run, const KGridGeometry& g) {
    auto fmt = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    run.manifest.add_param("nx", std::to_string(g.nx));
    run.manifest.add_param("ny", std::to_string(g.ny));
    run.manifest.add_param("kx0", fmt(g.kx0));
    run.manifest.add_param("ky0", fmt(g.ky0));
    run.manifest.add_param("dkx", fmt(g.dkx));
    run.manifest.add_param("dky", fmt(g.dky));
}

const BeamSpec& need_beam(const Run& run) {
    if (!run.cfg.beam) throw config_error("this command needs a [beam] section");
    return *run.cfg.beam;
}

const TransitionSpec& need_transition(const Run& run) {
    if (!run.cfg.transition)
        throw config_error("this command needs a [transition] section");
    return *run.cfg.transition;
}

} // namespace

int cmd_rocking(const CliOptions& opts) {
    Run run = open_run("rocking", opts);
    const LayerStack& stack = run.cfg.stack;
    const double omega = stack.omega();
    const double theta_c = std::sqrt(2.0 * max_delta(stack));
    const double hi = theta_c > 0.0 ? 3.0 * theta_c : 1e-2;
    std::vector<double> grid(8001);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = 1e-4 + (hi - 1e-4) * static_cast<double>(i) /
                             static_cast<double>(grid.size() - 1);
    const RockingCurve rc = rocking_curve(stack, omega, grid);
    write_rocking_csv(run.path("rocking.csv"), rc.theta, rc.reflectivity);
    run.manifest.add_output(run.path("rocking.csv"));
    const auto minima = rocking_minima(rc);
    std::size_t idx = 0;
    for (const auto& [th, r] : minima) {
        std::ostringstream key;
        key << "minimum_" << idx++;
        std::ostringstream val;
        val.precision(10);
        val << th * 1e3 << " mrad, R = " << r;
        run.manifest.add_param(key.str(), val.str());
        if (!opts.quiet)
            std::cout << "minimum: theta = " << th * 1e3 << " mrad, R = " << r << "\n";
    }
    run.finish();
    return 0;
}

int cmd_fieldmap(const CliOptions& opts) {
    Run run = open_run("fieldmap", opts);
    resolve_theta(run);
    const BeamSpec& beam = need_beam(run);
    const LayerStack& stack = run.cfg.stack;
    const double omega = beam.omega;
    const std::vector<double> z = z_grid(run.cfg.grid);
    const SynthesisOptions so = synth_opts(opts);
    for (const auto& w : beam.warnings())
        if (!opts.quiet) std::cerr << "warning: " << w << "\n";

    auto write_map = [&](const FieldMap& field, const std::string& stem) {
        const std::string grid_path = run.path(stem + ".xcg");
        write_grid(grid_path, to_grid_file(field, run.cfg.output.single_precision));
        run.manifest.add_output(grid_path);
        if (run.cfg.output.csv) {
            const std::string csv_path = run.path(stem + ".csv");
            write_intensity_csv(csv_path, field);
            run.manifest.add_output(csv_path);
        }
    };

    if (run.cfg.theta_div_list.empty()) {
        const KGridGeometry geom =
            default_k_grid(beam, omega, run.cfg.grid.n, run.cfg.grid.sigma_cover,
                           run.cfg.grid.x_span, run.cfg.grid.y_span);
        record_grid_params(run, geom);
        const CavityAngularSpectrum spectrum =
            cavity_angular_spectrum(beam, geom, omega);
        const FieldMap field = synthesize_field(spectrum, stack, z, omega, so);
        write_map(field, "field");
    } else {
        const auto items = field_scan_divergence(
            beam, stack, run.cfg.theta_div_list, z, omega, run.cfg.grid.n,
            run.cfg.grid.sigma_cover, run.cfg.grid.x_span, run.cfg.grid.y_span, so);
        for (std::size_t i = 0; i < items.size(); ++i) {
            std::ostringstream stem;
            stem << "field_" << i;
            write_map(items[i].field, stem.str());
            std::ostringstream key;
            key << "theta_div_" << i;
            run.manifest.add_param(key.str(),
                                   std::to_string(items[i].theta_div * 1e3) + " mrad");
        }
    }
    run.finish();
    return 0;
}

int cmd_invert(const CliOptions& opts) {
    Run run = open_run("invert", opts);
    resolve_theta(run);
    const BeamSpec& beam = need_beam(run);
    const TransitionSpec& transition = need_transition(run);
    const LayerStack& stack = run.cfg.stack;
    const double omega = transition.omega_nuc;
    const double z_res = stack.resonant_center_depth();

    const KGridGeometry geom =
        default_k_grid(beam, omega, run.cfg.grid.n, run.cfg.grid.sigma_cover,
                       run.cfg.grid.x_span, run.cfg.grid.y_span);
    record_grid_params(run, geom);
    const CavityAngularSpectrum spectrum = cavity_angular_spectrum(beam, geom, omega);
    const FieldMap slab = synthesize_slab(spectrum, stack, z_res, omega, synth_opts(opts));
    const InversionMap map = inversion_map(slab, beam, transition);

    const std::string grid_path = run.path("inversion_field.xcg");
    write_grid(grid_path, to_grid_file(slab, run.cfg.output.single_precision));
    run.manifest.add_output(grid_path);
    if (run.cfg.output.csv) {
        write_inversion_csv(run.path("inversion.csv"), map);
        run.manifest.add_output(run.path("inversion.csv"));
    }

    std::ostringstream summary;
    summary.precision(10);
    summary << "peak_sigma_z = " << map.sigma_z_peak << "\n"
            << "inverted_fraction = " << map.inverted_fraction << "\n"
            << "phi_peak = " << map.phi_peak << "\n";
    if (!opts.quiet) std::cout << summary.str();
    run.manifest.add_param("peak_sigma_z", std::to_string(map.sigma_z_peak));
    run.manifest.add_param("inverted_fraction", std::to_string(map.inverted_fraction));
    run.manifest.add_param("phi_peak", std::to_string(map.phi_peak));
    run.finish();
    return 0;
}

int cmd_chi(const CliOptions& opts) {
    Run run = open_run("chi", opts);
    resolve_theta(run);
    const BeamSpec& beam = need_beam(run);
    const TransitionSpec& transition = need_transition(run);

    const double xs = chi_sigma(transition);
    const double xsource = chi_source(beam.pulse_energy, beam.bandwidth_rel);
    const double xnec = chi_source_necessary(beam.w0, transition);
    const double phi = peak_pulse_area(beam, transition);

    std::ostringstream os;
    os.precision(10);
    os << "chi_sigma_m_per_sqrtJ = " << xs << "\n"
       << "chi_sigma_m_per_sqrtmJ = " << xs / std::sqrt(1e3) << "\n"
       << "chi_source_sqrtJ = " << xsource << "\n"
       << "chi_source_sqrtmJ = " << xsource * std::sqrt(1e3) << "\n"
       << "chi_source_necessary_sqrtJ = " << xnec << "\n"
       << "phi_peak = " << phi << "\n"
       << "sigma0_m2 = " << sigma0(transition) << "\n"
       << "sigma_tilde_m2 = " << sigma_tilde(transition) << "\n"
       << "dipole_Cm = " << effective_dipole(transition) << "\n"
       << "tau_pulse_s = " << beam.tau_pulse << "\n"
       << "n_photons = " << beam.n_photons << "\n"
       << "pulse_energy_J = " << beam.pulse_energy << "\n"
       << "bandwidth_rel = " << beam.bandwidth_rel << "\n"
       << "w0_m = " << beam.w0 << "\n";
    std::cout << os.str();

    std::ofstream report(run.path("chi.txt"));
    if (!report) throw io_error("cannot write chi report");
    report << os.str();
    report.close();
    run.manifest.add_output(run.path("chi.txt"));
    run.finish();
    return 0;
}

int cmd_validate(const CliOptions& opts) {
    Run run = open_run("validate", opts);
    resolve_theta(run);
    const TransitionSpec& transition = need_transition(run);
    const SourceSpec& src = run.cfg.source;
    const ValidateThresholds& th = run.cfg.thresholds;

    std::ostringstream os;
    os.precision(10);

    const double gamma_rate = transition.gamma_ev * consts::ev_to_joule / consts::hbar;
    const double b_rate = src.b_eff > 0.0 ? src.b_eff : gamma_rate;
    double sigma_pulse = src.sigma_pulse;
    if (sigma_pulse <= 0.0 && run.cfg.beam) sigma_pulse = run.cfg.beam->tau_pulse;
    if (sigma_pulse <= 0.0)
        throw config_error("validate needs [source] sigma_pulse or a [beam] pulse");

    const DepletionReport dep =
        depletion_report(b_rate, sigma_pulse, gamma_rate, th.depletion_max);
    os << "depletion.b_sigma = " << dep.b_sigma_product << "\n"
       << "depletion.time_attenuation = " << dep.time_picture_attenuation << "\n"
       << "depletion.frequency_attenuation = " << dep.frequency_attenuation << "\n"
       << "depletion.verdict = " << to_string(dep.verdict) << "\n";

    if (run.cfg.beam && run.cfg.stack.has_resonant_layer() && src.number_density > 0.0) {
        const double t_res = run.cfg.stack.resonant_layer_thickness();
        const InversionBudget budget = inversion_budget(
            *run.cfg.beam, transition, t_res, src.number_density, th.budget_min);
        os << "budget.n_required = " << budget.n_required << "\n"
           << "budget.n_absorbed = " << budget.n_absorbed << "\n"
           << "budget.ratio = " << budget.ratio << "\n"
           << "budget.verdict = " << to_string(budget.verdict) << "\n";
    }

    if (src.flux > 0.0 && run.cfg.beam) {
        const CountRateBenchmark bench = synchrotron_benchmark(
            src.flux, src.bandwidth_ev, run.cfg.stack.photon_energy_ev(),
            src.pulse_spacing, run.cfg.beam->w0, src.target_thickness,
            src.number_density, transition, src.detection_efficiency, th.phi_max);
        os << "benchmark.chi_source_sqrtJ = " << bench.chi_source << "\n"
           << "benchmark.pulse_area = " << bench.pulse_area << "\n"
           << "benchmark.n_excited_per_pulse = " << bench.n_excited << "\n"
           << "benchmark.n_detected_per_pulse = " << bench.n_detected << "\n";
    }

    std::cout << os.str();
    std::ofstream report(run.path("validate.txt"));
    if (!report) throw io_error("cannot write validate report");
    report << os.str();
    report.close();
    run.manifest.add_output(run.path("validate.txt"));
    run.finish();
    return 0;
}

int run_command(const std::string& command, const CliOptions& opts) {
    try {
        if (command == "rocking") return cmd_rocking(opts);
        if (command == "fieldmap") return cmd_fieldmap(opts);
        if (command == "invert") return cmd_invert(opts);
        if (command == "chi") return cmd_chi(opts);
        if (command == "validate") return cmd_validate(opts);
        std::cerr << "unknown command '" << command << "'\n";
        return 1;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const numeric_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace xcav
