#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xcav/grid.hpp"

namespace xcav {

/// Binary grid container ("XCAVGRID" format, version 1):
///   magic[8] = "XCAVGRID", u16 version, u16 dtype (8 = complex64,
///   16 = complex128), u16 ndim, u16 flags (bit 0: mask plane appended),
///   ndim x u64 dims, per axis { f64 origin, f64 spacing, u16 unit length,
///   unit bytes }, little-endian interleaved payload, then ndim-product u8
///   mask bytes when flagged. Axis order matches payload strides
///   (last axis fastest).
struct GridFile {
    struct Axis {
        std::uint64_t size = 0;
        double origin = 0.0;
        double spacing = 0.0;
        std::string unit;
    };
    std::vector<Axis> axes;
    bool single_precision = false;
    std::vector<cplx> values;            // row-major, last axis fastest
    std::vector<std::uint8_t> mask;      // empty when absent

    std::size_t total() const {
        std::size_t n = 1;
        for (const auto& a : axes) n *= a.size;
        return n;
    }
};

void write_grid(const std::string& path, const GridFile& grid);
GridFile read_grid(const std::string& path);

GridFile to_grid_file(const AngularSpectrumGrid& g, bool single_precision = false);
GridFile to_grid_file(const FieldMap& f, bool single_precision = false);

/// theta_mrad,reflectivity rows.
void write_rocking_csv(const std::string& path, const std::vector<double>& theta,
                       const std::vector<double>& reflectivity);

/// Long-format intensity slice: x_m,<axis2>_m,intensity columns.
void write_intensity_csv(const std::string& path, const FieldMap& f);

/// x_m,y_m,sigma_z,phi columns.
void write_inversion_csv(const std::string& path, const InversionMap& m);

/// FNV-1a 64-bit over a byte range; stable content fingerprint for manifests.
std::uint64_t fnv1a(const void* data, std::size_t n);
std::uint64_t fnv1a_file(const std::string& path);
std::string hex64(std::uint64_t v);

} // namespace xcav
