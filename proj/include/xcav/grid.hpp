#pragma once

#include <cstdint>
#include <vector>

#include "xcav/constants.hpp"

namespace xcav {

/// Uniform 2D k-space grid geometry; kx(i) = kx0 + i*dkx, ky(j) = ky0 + j*dky.
struct KGridGeometry {
    std::size_t nx = 0;
    std::size_t ny = 0;
    double kx0 = 0.0;
    double ky0 = 0.0;
    double dkx = 0.0;
    double dky = 0.0;

    double kx(std::size_t i) const { return kx0 + static_cast<double>(i) * dkx; }
    double ky(std::size_t j) const { return ky0 + static_cast<double>(j) * dky; }
    std::size_t cells() const { return nx * ny; }
    std::size_t index(std::size_t i, std::size_t j) const { return i * ny + j; }

    /// Real-space sampling implied by the FFT reciprocal relations,
    /// dx = 2pi/(nx dkx), window centered on zero.
    double dx() const { return 2.0 * consts::pi / (static_cast<double>(nx) * dkx); }
    double dy() const { return 2.0 * consts::pi / (static_cast<double>(ny) * dky); }
    double x0() const { return -0.5 * static_cast<double>(nx) * dx(); }
    double y0() const { return -0.5 * static_cast<double>(ny) * dy(); }
};

/// Complex 2D grid over (kx, ky) with an on-shell validity mask. Masked cells
/// hold value 0 and contribute nothing to synthesis.
struct AngularSpectrumGrid {
    KGridGeometry geom;
    std::vector<cplx> values;        // row-major [ix*ny + iy]
    std::vector<std::uint8_t> mask;  // 1 = valid (on-shell)

    cplx& at(std::size_t i, std::size_t j) { return values[geom.index(i, j)]; }
    const cplx& at(std::size_t i, std::size_t j) const { return values[geom.index(i, j)]; }
    bool valid(std::size_t i, std::size_t j) const { return mask[geom.index(i, j)] != 0; }
};

/// Complex field samples on a real-space grid at fixed frequency. The first
/// axis is always x; the second is either a z list (maps in the x-z plane at
/// y = 0) or a uniform y axis (slab at fixed depth).
struct FieldMap {
    enum class SecondAxis { z_list, y_uniform };

    SecondAxis axis2 = SecondAxis::z_list;
    std::size_t nx = 0;
    double x0 = 0.0;
    double dx = 0.0;

    std::vector<double> z;  // z_list mode: depth per row
    std::size_t ny = 0;     // y_uniform mode
    double y0 = 0.0;
    double dy = 0.0;
    double z_slab = 0.0;    // y_uniform mode: depth of the slab

    std::vector<cplx> values; // [row*nx + ix]; row = z index or y index
    double omega = 0.0;
    double norm_amplitude = 0.0; // free-space focus peak |A0| of the same pulse

    std::size_t rows() const { return axis2 == SecondAxis::z_list ? z.size() : ny; }
    cplx& at(std::size_t row, std::size_t ix) { return values[row * nx + ix]; }
    const cplx& at(std::size_t row, std::size_t ix) const { return values[row * nx + ix]; }

    /// |E/A0|^2, the intensity normalized to the free-space focus peak.
    double normalized_intensity(std::size_t row, std::size_t ix) const {
        double a = std::abs(at(row, ix)) / norm_amplitude;
        return a * a;
    }
};

/// Excitation map over the resonant layer: sigma_z and pulse area per cell.
struct InversionMap {
    std::size_t nx = 0, ny = 0;
    double x0 = 0.0, dx = 0.0, y0 = 0.0, dy = 0.0;
    double z = 0.0; // depth of the sampled plane
    std::vector<double> sigma_z; // [iy*nx + ix]
    std::vector<double> phi;
    double phi_peak = 0.0;
    double sigma_z_peak = -1.0;
    double inverted_fraction = 0.0; // area fraction with sigma_z > 0
};

} // namespace xcav
