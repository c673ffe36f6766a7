#include "xcav/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "xcav/beam.hpp"
#include "xcav/errors.hpp"
#include "xcav/fft.hpp"

namespace xcav {

namespace {

/// field[p] = dkx e^{i kx0 x_p} FFT1^{-1}[ srow[m] e^{i m dkx x0} ][p]
void x_line_from_krow(const std::vector<cplx>& srow, const KGridGeometry& g,
                      cplx* out) {
    const std::size_t n = g.nx;
    const double x0 = g.x0();
    const double dx = g.dx();
    std::vector<cplx> tmp(n);
    for (std::size_t m = 0; m < n; ++m)
        tmp[m] = srow[m] * std::exp(cplx(0.0, static_cast<double>(m) * g.dkx * x0));
    std::vector<cplx> y(n);
    fft::backward_1d(tmp.data(), y.data(), n);
    for (std::size_t p = 0; p < n; ++p) {
        const double xp = x0 + static_cast<double>(p) * dx;
        out[p] = g.dkx * std::exp(cplx(0.0, g.kx0 * xp)) * y[p];
    }
}

void check_spectrum_stack(const CavityAngularSpectrum& spectrum, double omega) {
    if (spectrum.omega != omega)
        throw config_error("spectrum frequency does not match the synthesis frequency");
    if (spectrum.grid.values.empty())
        throw config_error("empty angular spectrum");
}

} // namespace

double mode_ridge_halfwidth(const LayerStack& stack, double omega, double theta_in) {
    std::pair<double, double> m;
    try {
        m = first_rocking_minimum(stack, omega, std::max(1e-5, theta_in - 1.5e-3),
                                  theta_in + 1.5e-3, 2001);
    } catch (const numeric_error&) {
        return 0.0; // featureless rocking curve (e.g. vacuum)
    }
    const double k = omega / consts::c_light;
    auto refl = [&](double th) {
        return std::norm(parratt_reflectivity(stack, k * std::cos(th), 0.0, omega));
    };
    const double span = 1.0e-3;
    const double shoulder = std::min(refl(m.first - span), refl(m.first + span));
    const double half = 0.5 * (m.second + shoulder);
    const double step = 1e-6;
    double lo = m.first, hi = m.first;
    while (m.first - lo < span && refl(lo) < half) lo -= step;
    while (hi - m.first < span && refl(hi) < half) hi += step;
    const double dtheta = 0.5 * (hi - lo);
    return k * std::sin(m.first) * dtheta;
}

FieldMap synthesize_field(const CavityAngularSpectrum& spectrum,
                          const LayerStack& stack, const std::vector<double>& z_list,
                          double omega, const SynthesisOptions& opts) {
    check_spectrum_stack(spectrum, omega);
    const KGridGeometry& g = spectrum.grid.geom;

    // Nyquist check against the narrowest rocking feature
    if (opts.warn) {
        const double ridge = mode_ridge_halfwidth(stack, omega, spectrum.theta_in);
        if (ridge > 0.0 && g.dkx > 0.5 * ridge) {
            std::ostringstream os;
            os << "k-grid too coarse for the cavity mode ridge: dkx = " << g.dkx
               << " rad/m vs ridge half width " << ridge
               << " rad/m; increase x_span to at least "
               << 4.0 * consts::pi / ridge << " m or raise n";
            opts.warn(os.str());
        }
    }

    FieldMap out;
    out.axis2 = FieldMap::SecondAxis::z_list;
    out.nx = g.nx;
    out.x0 = g.x0();
    out.dx = g.dx();
    out.z = z_list;
    out.omega = omega;
    out.norm_amplitude = spectrum.norm_amplitude;
    out.values.assign(z_list.size() * g.nx, cplx(0.0));

    // group depths by containing layer, preserving row order
    std::map<std::size_t, std::vector<std::size_t>> by_layer;
    for (std::size_t row = 0; row < z_list.size(); ++row)
        by_layer[stack.layer_at(z_list[row])].push_back(row);

    for (const auto& [layer, rows] : by_layer) {
        const LayerAmplitudeGrid amp = layer_amplitude_grid(stack, layer, g, omega);
        const double z_top = layer == 0 ? 0.0 : stack.interface_depth(layer - 1);

        auto work = [&](std::size_t begin, std::size_t end) {
            std::vector<cplx> srow(g.nx);
            for (std::size_t idx = begin; idx < end; ++idx) {
                const std::size_t row = rows[idx];
                const double u = z_list[row] - z_top;
                for (std::size_t i = 0; i < g.nx; ++i) {
                    cplx acc(0.0);
                    const std::size_t base = i * g.ny;
                    for (std::size_t j = 0; j < g.ny; ++j) {
                        const std::size_t cell = base + j;
                        if (!amp.mask[cell] || !spectrum.grid.mask[cell]) continue;
                        acc += spectrum.grid.values[cell] * amp.evaluate(cell, u);
                    }
                    srow[i] = acc * g.dky;
                }
                x_line_from_krow(srow, g, &out.values[row * g.nx]);
            }
        };

        const unsigned nthreads = std::max(1u, opts.threads);
        if (nthreads == 1 || rows.size() < 2) {
            work(0, rows.size());
        } else {
            std::vector<std::thread> pool;
            const std::size_t chunk = (rows.size() + nthreads - 1) / nthreads;
            for (unsigned t = 0; t < nthreads; ++t) {
                const std::size_t b = t * chunk;
                const std::size_t e = std::min(rows.size(), b + chunk);
                if (b >= e) break;
                pool.emplace_back(work, b, e);
            }
            for (auto& th : pool) th.join();
        }
    }
    return out;
}

FieldMap synthesize_slab(const CavityAngularSpectrum& spectrum,
                         const LayerStack& stack, double z, double omega,
                         const SynthesisOptions& opts) {
    (void)opts;
    check_spectrum_stack(spectrum, omega);
    const KGridGeometry& g = spectrum.grid.geom;
    const auto [layer, u] = stack.locate(z);
    const LayerAmplitudeGrid amp = layer_amplitude_grid(stack, layer, g, omega);

    std::vector<cplx> integrand(g.cells(), cplx(0.0));
    const double x0 = g.x0(), y0 = g.y0();
    for (std::size_t i = 0; i < g.nx; ++i) {
        const cplx phx = std::exp(cplx(0.0, static_cast<double>(i) * g.dkx * x0));
        for (std::size_t j = 0; j < g.ny; ++j) {
            const std::size_t cell = g.index(i, j);
            if (!amp.mask[cell] || !spectrum.grid.mask[cell]) continue;
            const cplx phy = std::exp(cplx(0.0, static_cast<double>(j) * g.dky * y0));
            integrand[cell] =
                spectrum.grid.values[cell] * amp.evaluate(cell, u) * phx * phy;
        }
    }
    std::vector<cplx> transformed(g.cells());
    fft::backward_2d(integrand.data(), transformed.data(), g.nx, g.ny);

    FieldMap out;
    out.axis2 = FieldMap::SecondAxis::y_uniform;
    out.nx = g.nx;
    out.ny = g.ny;
    out.x0 = x0;
    out.dx = g.dx();
    out.y0 = y0;
    out.dy = g.dy();
    out.z_slab = z;
    out.omega = omega;
    out.norm_amplitude = spectrum.norm_amplitude;
    out.values.assign(g.cells(), cplx(0.0));
    const double measure = g.dkx * g.dky;
    for (std::size_t q = 0; q < g.ny; ++q) {
        const double yq = y0 + static_cast<double>(q) * g.dy();
        const cplx phy = std::exp(cplx(0.0, g.ky0 * yq));
        for (std::size_t p = 0; p < g.nx; ++p) {
            const double xp = x0 + static_cast<double>(p) * g.dx();
            const cplx phx = std::exp(cplx(0.0, g.kx0 * xp));
            // transformed is row-major [p*ny + q]
            out.values[q * g.nx + p] = measure * phx * phy * transformed[p * g.ny + q];
        }
    }
    return out;
}

double collimated_mode_variation(const BeamSpec& spec, const LayerStack& stack,
                                 double omega) {
    const double k = omega / consts::c_light;
    const double kxc = k * std::cos(spec.theta_in);
    const double sigma_kx = 2.0 * std::sin(spec.theta_in) / spec.w0;
    const double sigma_ky = 2.0 / spec.w0;
    const double z_probe = stack.has_resonant_layer()
                               ? stack.resonant_center_depth()
                               : 0.5 * stack.total_thickness();
    const cplx ref = mode_function(stack, z_probe, kxc, 0.0, omega);
    if (std::abs(ref) == 0.0)
        throw numeric_error("mode function vanishes at the probe depth");
    double worst = 0.0;
    const double probes[4][2] = {{kxc - 2.0 * sigma_kx, 0.0},
                                 {kxc + 2.0 * sigma_kx, 0.0},
                                 {kxc, -2.0 * sigma_ky},
                                 {kxc, 2.0 * sigma_ky}};
    for (const auto& pr : probes) {
        const double kpar2 = pr[0] * pr[0] + pr[1] * pr[1];
        if (kpar2 >= k * k) continue; // clamp: off-shell probes carry no weight
        const cplx v = mode_function(stack, z_probe, pr[0], pr[1], omega);
        worst = std::max(worst, std::abs(v - ref) / std::abs(ref));
    }
    return worst;
}

FieldMap collimated_field(const BeamSpec& spec, const LayerStack& stack,
                          const std::vector<double>& z_list, double omega,
                          const KGridGeometry& geom, double max_variation,
                          const SynthesisOptions& opts) {
    (void)opts;
    const double variation = collimated_mode_variation(spec, stack, omega);
    if (variation > max_variation) {
        std::ostringstream os;
        os << "collimated approximation invalid: mode function varies by "
           << variation << " over the spectrum support (limit " << max_variation
           << ")";
        throw numeric_error(os.str());
    }
    const CavityAngularSpectrum spectrum =
        cavity_angular_spectrum(spec, geom, omega);

    // envelope at y = 0: same synthesis with unit mode factor
    std::vector<cplx> srow(geom.nx);
    for (std::size_t i = 0; i < geom.nx; ++i) {
        cplx acc(0.0);
        const std::size_t base = i * geom.ny;
        for (std::size_t j = 0; j < geom.ny; ++j)
            if (spectrum.grid.mask[base + j]) acc += spectrum.grid.values[base + j];
        srow[i] = acc * geom.dky;
    }
    std::vector<cplx> envelope(geom.nx);
    x_line_from_krow(srow, geom, envelope.data());

    const double k = omega / consts::c_light;
    const double kxc = k * std::cos(spec.theta_in);

    FieldMap out;
    out.axis2 = FieldMap::SecondAxis::z_list;
    out.nx = geom.nx;
    out.x0 = geom.x0();
    out.dx = geom.dx();
    out.z = z_list;
    out.omega = omega;
    out.norm_amplitude = spectrum.norm_amplitude;
    out.values.resize(z_list.size() * geom.nx);
    for (std::size_t row = 0; row < z_list.size(); ++row) {
        const cplx mode = mode_function(stack, z_list[row], kxc, 0.0, omega);
        for (std::size_t p = 0; p < geom.nx; ++p)
            out.values[row * geom.nx + p] = mode * envelope[p];
    }
    return out;
}

double enhancement_factor(const FieldMap& field, const LayerStack& stack,
                          const BeamSpec& beam) {
    (void)beam;
    if (!stack.has_resonant_layer())
        throw config_error("enhancement factor needs a resonant layer");
    const std::size_t j = stack.resonant_layer_index();
    const double z_lo = stack.interface_depth(j - 1);
    const double z_hi = stack.interface_depth(j);

    double peak = -1.0;
    if (field.axis2 == FieldMap::SecondAxis::z_list) {
        for (std::size_t row = 0; row < field.z.size(); ++row) {
            if (field.z[row] < z_lo || field.z[row] > z_hi) continue;
            for (std::size_t p = 0; p < field.nx; ++p)
                peak = std::max(peak, std::abs(field.at(row, p)));
        }
    } else {
        if (field.z_slab >= z_lo && field.z_slab <= z_hi)
            for (const cplx& v : field.values) peak = std::max(peak, std::abs(v));
    }
    if (peak < 0.0)
        throw config_error("field map contains no depth inside the resonant layer");
    return peak / field.norm_amplitude;
}

std::vector<DivergenceScanItem> field_scan_divergence(
    const BeamSpec& base, const LayerStack& stack,
    const std::vector<double>& theta_div_list, const std::vector<double>& z_list,
    double omega, std::size_t n, double sigma_cover,
    std::optional<double> x_span, std::optional<double> y_span,
    const SynthesisOptions& opts) {
    std::vector<DivergenceScanItem> out;
    out.reserve(theta_div_list.size());
    for (double theta_div : theta_div_list) {
        BeamSpec item = BeamSpec::from_photons(
            base.omega, BeamSpec::waist_from_divergence(base.omega, theta_div),
            base.theta_in, base.n_photons, base.tau_pulse);
        item.focus_offset = base.focus_offset;
        const KGridGeometry geom =
            default_k_grid(item, omega, n, sigma_cover, x_span, y_span);
        const CavityAngularSpectrum spectrum =
            cavity_angular_spectrum(item, geom, omega);
        out.push_back({theta_div, synthesize_field(spectrum, stack, z_list, omega, opts)});
    }
    return out;
}

} // namespace xcav
