#include "xcav/bloch.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "xcav/errors.hpp"

namespace xcav {

double pulse_area_from_field(cplx e_res, double dipole) {
    return 4.0 * consts::pi / consts::hbar * dipole * std::abs(e_res);
}

BlochState area_theorem_state(double phi_total, double phi_n, double omega_nuc,
                              double t) {
    BlochState s;
    s.time = t;
    s.sigma_z = -std::cos(phi_total);
    // lab frame: +(i/2) e^{-i w t} e^{i phi} sin(Phi); rotating frame drops the carrier
    (void)omega_nuc;
    s.sigma_minus = cplx(0.0, 0.5) * std::exp(cplx(0.0, phi_n)) * std::sin(phi_total);
    return s;
}

namespace {

/// Catmull-Rom interpolation of the sampled drive (uniform or not).
class DriveInterpolant {
public:
    DriveInterpolant(const std::vector<cplx>& v, const std::vector<double>& t)
        : v_(v), t_(t) {}

    cplx operator()(double t) const {
        if (t <= t_.front()) return v_.front();
        if (t >= t_.back()) return v_.back();
        const auto it = std::upper_bound(t_.begin(), t_.end(), t);
        std::size_t i1 = static_cast<std::size_t>(it - t_.begin()) - 1;
        const std::size_t n = t_.size();
        const std::size_t i0 = i1 > 0 ? i1 - 1 : 0;
        const std::size_t i2 = std::min(i1 + 1, n - 1);
        const std::size_t i3 = std::min(i1 + 2, n - 1);
        const double h = t_[i2] - t_[i1];
        if (h <= 0.0) return v_[i1];
        const double s = (t - t_[i1]) / h;
        // finite-difference tangents scaled to the local interval
        const cplx m1 = i1 > 0 ? (v_[i2] - v_[i0]) / ((t_[i2] - t_[i0]) / h)
                               : (v_[i2] - v_[i1]);
        const cplx m2 = i2 < n - 1 ? (v_[i3] - v_[i1]) / ((t_[i3] - t_[i1]) / h)
                                   : (v_[i2] - v_[i1]);
        const double s2 = s * s, s3 = s2 * s;
        return (2.0 * s3 - 3.0 * s2 + 1.0) * v_[i1] + (s3 - 2.0 * s2 + s) * m1 +
               (-2.0 * s3 + 3.0 * s2) * v_[i2] + (s3 - s2) * m2;
    }

private:
    const std::vector<cplx>& v_;
    const std::vector<double>& t_;
};

using OdeState = std::array<double, 3>; // Re sigma_-, Im sigma_-, sigma_z

} // namespace

std::vector<BlochState> bloch_ode_solve(double omega_nuc,
                                        const std::vector<cplx>& drive,
                                        const std::vector<double>& t_grid,
                                        const BlochOdeOptions& opts) {
    (void)omega_nuc; // dynamics are carrier-free in the rotating frame
    if (drive.size() != t_grid.size() || t_grid.size() < 2)
        throw config_error("bloch_ode_solve needs matching drive/time samples (>= 2)");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw config_error("bloch_ode_solve needs strictly increasing times");

    const DriveInterpolant omega_t(drive, t_grid);
    auto rhs = [&](const OdeState& y, OdeState& dydt, double t) {
        const cplx sm(y[0], y[1]);
        const cplx om = omega_t(t);
        const cplx dsm = cplx(0.0, -1.0) * om * y[2];
        dydt[0] = dsm.real();
        dydt[1] = dsm.imag();
        // 2i (Om sigma_+ - Om* sigma_-) = -4 Im(Om sigma_+), sigma_+ = conj(sigma_-)
        dydt[2] = -4.0 * std::imag(om * std::conj(sm));
    };

    namespace ode = boost::numeric::odeint;
    using stepper_t = ode::runge_kutta_dopri5<OdeState>;
    auto stepper = ode::make_controlled(opts.abs_tol, opts.rel_tol, stepper_t());

    std::vector<BlochState> out;
    out.reserve(t_grid.size());
    OdeState y{0.0, 0.0, -1.0};
    out.push_back({y[2], cplx(y[0], y[1]), t_grid.front()});

    const double span = t_grid.back() - t_grid.front();
    double dt = opts.initial_dt_fraction * span;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        try {
            ode::integrate_adaptive(stepper, rhs, y, t_grid[i - 1], t_grid[i], dt);
        } catch (const std::exception& e) {
            throw numeric_error(std::string("Bloch integration failed between t = ") +
                                std::to_string(t_grid[i - 1]) + " and " +
                                std::to_string(t_grid[i]) + ": " + e.what());
        }
        out.push_back({y[2], cplx(y[0], y[1]), t_grid[i]});
    }
    return out;
}

InversionMap inversion_map(const FieldMap& field, const BeamSpec& spec,
                           const TransitionSpec& t) {
    if (field.axis2 != FieldMap::SecondAxis::y_uniform)
        throw config_error("inversion map needs an (x, y) slab at the resonant layer");
    const double rel = std::abs(field.omega - t.omega_nuc) / t.omega_nuc;
    if (rel > 1e-9)
        throw config_error("field map is not evaluated at the resonant frequency");

    const double d = effective_dipole(t) * spec.alignment_cos;
    InversionMap map;
    map.nx = field.nx;
    map.ny = field.ny;
    map.x0 = field.x0;
    map.dx = field.dx;
    map.y0 = field.y0;
    map.dy = field.dy;
    map.z = field.z_slab;
    map.sigma_z.resize(field.values.size());
    map.phi.resize(field.values.size());
    std::size_t inverted = 0;
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        // physical-field Fourier amplitude is half the phasor spectrum
        const double phi = pulse_area_from_field(0.5 * field.values[i], d);
        map.phi[i] = phi;
        map.sigma_z[i] = -std::cos(phi);
        if (map.sigma_z[i] > 0.0) ++inverted;
        map.phi_peak = std::max(map.phi_peak, phi);
        map.sigma_z_peak = std::max(map.sigma_z_peak, map.sigma_z[i]);
    }
    map.inverted_fraction =
        static_cast<double>(inverted) / static_cast<double>(field.values.size());
    return map;
}

} // namespace xcav
