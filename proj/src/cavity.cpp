#include "xcav/cavity.hpp"

#include <cmath>

#include "xcav/errors.hpp"

namespace xcav {

cplx fresnel_s(cplx kz_above, cplx kz_below) {
    if (kz_above == cplx(0.0) && kz_below == cplx(0.0))
        throw numeric_error("degenerate interface: both normal wavenumbers vanish");
    return (kz_above - kz_below) / (kz_above + kz_below);
}

cplx layer_kz(const MaterialIndex& m, double omega, double kpar2) {
    const double k = omega / consts::c_light;
    const cplx n = m.refractive_index();
    cplx v = std::sqrt(n * n * k * k - kpar2);
    if (v.imag() < 0.0 || (v.imag() == 0.0 && v.real() < 0.0)) v = -v;
    return v;
}

namespace {

void check_on_shell(const LayerStack& stack, double kpar2, double omega) {
    const double k = omega / consts::c_light;
    const cplx n_top = stack.layers().front().material.refractive_index();
    const double bound = (n_top * n_top).real() * k * k;
    if (kpar2 > bound)
        throw numeric_error("in-plane wave vector off shell in the top layer");
}

/// Upward Parratt pass: ratios x_j = up/down at the bottom of each layer.
/// Returns x (size L-1, substrate excluded) and kz for all layers.
struct ParrattPass {
    std::vector<cplx> x;
    std::vector<cplx> kz;
};

ParrattPass parratt_pass(const LayerStack& stack, double kpar2, double omega) {
    const auto& layers = stack.layers();
    const std::size_t L = layers.size();
    ParrattPass p;
    p.kz.resize(L);
    for (std::size_t j = 0; j < L; ++j)
        p.kz[j] = layer_kz(layers[j].material, omega, kpar2);
    p.x.assign(L - 1, cplx(0.0));
    cplx R(0.0); // up/down at the top of layer j+1
    for (std::size_t jj = L - 1; jj-- > 0;) {
        const cplx r = fresnel_s(p.kz[jj], p.kz[jj + 1]);
        const cplx x = (r + R) / (cplx(1.0) + r * R);
        p.x[jj] = x;
        if (jj > 0) {
            const double t = *layers[jj].thickness;
            R = x * std::exp(cplx(0.0, 2.0) * p.kz[jj] * t);
        }
    }
    return p;
}

} // namespace

StackFields solve_stack_fields(const LayerStack& stack, double kpar2, double omega) {
    check_on_shell(stack, kpar2, omega);
    const auto& layers = stack.layers();
    const std::size_t L = layers.size();
    const ParrattPass p = parratt_pass(stack, kpar2, omega);

    StackFields f;
    f.waves.resize(L);
    f.r = p.x[0];
    f.waves[0] = {cplx(1.0), f.r, p.kz[0]};

    // downward sweep: amplitudes at the bottom of layer j feed layer j+1
    cplx a_bot = 1.0;      // downward amplitude at bottom of current layer
    cplx b_bot = p.x[0];   // upward amplitude there
    for (std::size_t j = 1; j < L; ++j) {
        const cplx kz_prev = p.kz[j - 1];
        const cplx kz_here = p.kz[j];
        const cplx sum = a_bot + b_bot;
        const cplx dif = (kz_prev / kz_here) * (a_bot - b_bot);
        const cplx a_top = 0.5 * (sum + dif);
        if (j + 1 == L) {
            f.waves[j] = {a_top, cplx(0.0), kz_here};
            break;
        }
        const double t = *layers[j].thickness;
        const cplx phase = std::exp(cplx(0.0, 1.0) * kz_here * t);
        a_bot = a_top * phase;
        b_bot = p.x[j] * a_bot;
        f.waves[j] = {a_top, b_bot, kz_here};
    }
    return f;
}

cplx parratt_reflectivity(const LayerStack& stack, double kpar_x, double kpar_y,
                          double omega) {
    const double kpar2 = kpar_x * kpar_x + kpar_y * kpar_y;
    check_on_shell(stack, kpar2, omega);
    return parratt_pass(stack, kpar2, omega).x[0];
}

cplx evaluate_mode(const LayerStack& stack, const StackFields& fields, double z) {
    const auto [j, u] = stack.locate(z);
    const LayerWaves& w = fields.waves[j];
    const double t = stack.layers()[j].thickness.value_or(0.0);
    return w.down_top * std::exp(cplx(0.0, 1.0) * w.kz * u) +
           w.up_bottom * std::exp(cplx(0.0, 1.0) * w.kz * (t - u));
}

cplx mode_function(const LayerStack& stack, double z, double kpar_x,
                   double kpar_y, double omega) {
    const double kpar2 = kpar_x * kpar_x + kpar_y * kpar_y;
    return evaluate_mode(stack, solve_stack_fields(stack, kpar2, omega), z);
}

RockingCurve rocking_curve(const LayerStack& stack, double omega,
                           const std::vector<double>& theta_grid) {
    RockingCurve rc;
    rc.omega = omega;
    rc.theta = theta_grid;
    rc.reflectivity.reserve(theta_grid.size());
    const double k = omega / consts::c_light;
    for (double th : theta_grid) {
        const double kpar = k * std::cos(th);
        rc.reflectivity.push_back(std::norm(parratt_reflectivity(stack, kpar, 0.0, omega)));
    }
    return rc;
}

std::vector<std::pair<double, double>> rocking_minima(const RockingCurve& rc) {
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 1; i + 1 < rc.theta.size(); ++i) {
        if (rc.reflectivity[i] < rc.reflectivity[i - 1] &&
            rc.reflectivity[i] <= rc.reflectivity[i + 1])
            out.emplace_back(rc.theta[i], rc.reflectivity[i]);
    }
    return out;
}

std::pair<double, double> first_rocking_minimum(const LayerStack& stack,
                                                double omega, double theta_lo,
                                                double theta_hi,
                                                std::size_t samples) {
    std::vector<double> grid(samples);
    for (std::size_t i = 0; i < samples; ++i)
        grid[i] = theta_lo + (theta_hi - theta_lo) * static_cast<double>(i) /
                                 static_cast<double>(samples - 1);
    const auto mins = rocking_minima(rocking_curve(stack, omega, grid));
    if (mins.empty())
        throw numeric_error("no rocking-curve minimum in the requested range");
    // refine by golden-section around the coarse minimum
    const double k = omega / consts::c_light;
    auto refl = [&](double th) {
        return std::norm(parratt_reflectivity(stack, k * std::cos(th), 0.0, omega));
    };
    double a = mins[0].first - (theta_hi - theta_lo) / static_cast<double>(samples - 1);
    double b = mins[0].first + (theta_hi - theta_lo) / static_cast<double>(samples - 1);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    for (int it = 0; it < 80; ++it) {
        if (refl(c) < refl(d)) b = d;
        else a = c;
        c = b - gr * (b - a);
        d = a + gr * (b - a);
    }
    const double th = 0.5 * (a + b);
    return {th, refl(th)};
}

cplx LayerAmplitudeGrid::evaluate(std::size_t cell, double u) const {
    if (!mask[cell]) return cplx(0.0);
    const cplx i_kz = cplx(0.0, 1.0) * kz[cell];
    return down[cell] * std::exp(i_kz * u) + up[cell] * std::exp(i_kz * (thickness - u));
}

LayerAmplitudeGrid layer_amplitude_grid(const LayerStack& stack, std::size_t layer,
                                        const KGridGeometry& geom, double omega) {
    if (layer >= stack.size()) throw config_error("layer index out of range");
    LayerAmplitudeGrid out;
    out.geom = geom;
    out.layer = layer;
    out.thickness = stack.layers()[layer].thickness.value_or(0.0);
    const std::size_t n = geom.cells();
    out.down.assign(n, cplx(0.0));
    out.up.assign(n, cplx(0.0));
    out.kz.assign(n, cplx(0.0));
    out.mask.assign(n, 0);
    const double k = omega / consts::c_light;
    const cplx n_top = stack.layers().front().material.refractive_index();
    const double bound = (n_top * n_top).real() * k * k;
    for (std::size_t i = 0; i < geom.nx; ++i) {
        const double kx = geom.kx(i);
        for (std::size_t j = 0; j < geom.ny; ++j) {
            const double ky = geom.ky(j);
            const double kpar2 = kx * kx + ky * ky;
            const std::size_t cell = geom.index(i, j);
            if (kpar2 > bound) continue; // off shell: masked
            const StackFields f = solve_stack_fields(stack, kpar2, omega);
            out.down[cell] = f.waves[layer].down_top;
            out.up[cell] = f.waves[layer].up_bottom;
            out.kz[cell] = f.waves[layer].kz;
            out.mask[cell] = 1;
        }
    }
    return out;
}

AngularSpectrumGrid mode_function_grid(const LayerStack& stack, double z,
                                       const KGridGeometry& geom, double omega) {
    const auto [layer, u] = stack.locate(z);
    const LayerAmplitudeGrid amp = layer_amplitude_grid(stack, layer, geom, omega);
    AngularSpectrumGrid out;
    out.geom = geom;
    out.values.assign(geom.cells(), cplx(0.0));
    out.mask = amp.mask;
    for (std::size_t cell = 0; cell < geom.cells(); ++cell)
        if (amp.mask[cell]) out.values[cell] = amp.evaluate(cell, u);
    return out;
}

} // namespace xcav
