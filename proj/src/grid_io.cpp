#include "xcav/io.hpp"

#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "xcav/errors.hpp"

namespace xcav {

namespace {

constexpr char magic[8] = {'X', 'C', 'A', 'V', 'G', 'R', 'I', 'D'};
constexpr std::uint16_t format_version = 1;

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

} // namespace

void write_grid(const std::string& path, const GridFile& grid) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    os.write(magic, sizeof(magic));
    put<std::uint16_t>(os, format_version);
    put<std::uint16_t>(os, grid.single_precision ? 8 : 16);
    put<std::uint16_t>(os, static_cast<std::uint16_t>(grid.axes.size()));
    put<std::uint16_t>(os, grid.mask.empty() ? 0 : 1);
    for (const auto& a : grid.axes) put<std::uint64_t>(os, a.size);
    for (const auto& a : grid.axes) {
        put<double>(os, a.origin);
        put<double>(os, a.spacing);
        put<std::uint16_t>(os, static_cast<std::uint16_t>(a.unit.size()));
        os.write(a.unit.data(), static_cast<std::streamsize>(a.unit.size()));
    }
    if (grid.values.size() != grid.total())
        throw io_error("grid payload size mismatch");
    if (grid.single_precision) {
        std::vector<float> buf(grid.values.size() * 2);
        for (std::size_t i = 0; i < grid.values.size(); ++i) {
            buf[2 * i] = static_cast<float>(grid.values[i].real());
            buf[2 * i + 1] = static_cast<float>(grid.values[i].imag());
        }
        os.write(reinterpret_cast<const char*>(buf.data()),
                 static_cast<std::streamsize>(buf.size() * sizeof(float)));
    } else {
        os.write(reinterpret_cast<const char*>(grid.values.data()),
                 static_cast<std::streamsize>(grid.values.size() * sizeof(cplx)));
    }
    if (!grid.mask.empty()) {
        if (grid.mask.size() != grid.total())
            throw io_error("grid mask size mismatch");
        os.write(reinterpret_cast<const char*>(grid.mask.data()),
                 static_cast<std::streamsize>(grid.mask.size()));
    }
    if (!os) throw io_error("write failed for '" + path + "'");
}

GridFile read_grid(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open '" + path + "'");
    char m[8];
    is.read(m, 8);
    if (!is || std::memcmp(m, magic, 8) != 0)
        throw io_error("'" + path + "' is not an XCAVGRID file");
    const auto version = get<std::uint16_t>(is);
    if (version != format_version)
        throw io_error("unsupported XCAVGRID version " + std::to_string(version));
    const auto dtype = get<std::uint16_t>(is);
    if (dtype != 8 && dtype != 16) throw io_error("unknown XCAVGRID dtype");
    const auto ndim = get<std::uint16_t>(is);
    const auto flags = get<std::uint16_t>(is);
    GridFile g;
    g.single_precision = dtype == 8;
    g.axes.resize(ndim);
    for (auto& a : g.axes) a.size = get<std::uint64_t>(is);
    for (auto& a : g.axes) {
        a.origin = get<double>(is);
        a.spacing = get<double>(is);
        const auto len = get<std::uint16_t>(is);
        a.unit.resize(len);
        is.read(a.unit.data(), len);
    }
    const std::size_t n = g.total();
    g.values.resize(n);
    if (g.single_precision) {
        std::vector<float> buf(n * 2);
        is.read(reinterpret_cast<char*>(buf.data()),
                static_cast<std::streamsize>(buf.size() * sizeof(float)));
        for (std::size_t i = 0; i < n; ++i)
            g.values[i] = cplx(buf[2 * i], buf[2 * i + 1]);
    } else {
        is.read(reinterpret_cast<char*>(g.values.data()),
                static_cast<std::streamsize>(n * sizeof(cplx)));
    }
    if (flags & 1) {
        g.mask.resize(n);
        is.read(reinterpret_cast<char*>(g.mask.data()),
                static_cast<std::streamsize>(n));
    }
    if (!is) throw io_error("truncated XCAVGRID file '" + path + "'");
    return g;
}

GridFile to_grid_file(const AngularSpectrumGrid& g, bool single_precision) {
    GridFile f;
    f.single_precision = single_precision;
    f.axes = {{g.geom.nx, g.geom.kx0, g.geom.dkx, "rad/m"},
              {g.geom.ny, g.geom.ky0, g.geom.dky, "rad/m"}};
    f.values = g.values;
    f.mask = g.mask;
    return f;
}

GridFile to_grid_file(const FieldMap& fm, bool single_precision) {
    GridFile f;
    f.single_precision = single_precision;
    if (fm.axis2 == FieldMap::SecondAxis::z_list) {
        double dz = fm.z.size() > 1 ? fm.z[1] - fm.z[0] : 0.0;
        for (std::size_t i = 1; i < fm.z.size(); ++i)
            if (std::abs((fm.z[i] - fm.z[i - 1]) - dz) > 1e-9 * std::abs(dz) + 1e-18)
                throw io_error("binary export needs a uniform z axis");
        f.axes = {{fm.z.size(), fm.z.empty() ? 0.0 : fm.z.front(), dz, "m"},
                  {fm.nx, fm.x0, fm.dx, "m"}};
    } else {
        f.axes = {{fm.ny, fm.y0, fm.dy, "m"}, {fm.nx, fm.x0, fm.dx, "m"}};
    }
    f.values = fm.values;
    return f;
}

void write_rocking_csv(const std::string& path, const std::vector<double>& theta,
                       const std::vector<double>& reflectivity) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    os << "theta_mrad,reflectivity\n";
    os << std::setprecision(12);
    for (std::size_t i = 0; i < theta.size(); ++i)
        os << theta[i] * 1e3 << ',' << reflectivity[i] << '\n';
    if (!os) throw io_error("write failed for '" + path + "'");
}

void write_intensity_csv(const std::string& path, const FieldMap& f) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    const bool zmode = f.axis2 == FieldMap::SecondAxis::z_list;
    os << (zmode ? "x_m,z_m,intensity_norm\n" : "x_m,y_m,intensity_norm\n");
    os << std::setprecision(9);
    for (std::size_t row = 0; row < f.rows(); ++row) {
        const double c2 = zmode ? f.z[row] : f.y0 + static_cast<double>(row) * f.dy;
        for (std::size_t ix = 0; ix < f.nx; ++ix)
            os << f.x0 + static_cast<double>(ix) * f.dx << ',' << c2 << ','
               << f.normalized_intensity(row, ix) << '\n';
    }
    if (!os) throw io_error("write failed for '" + path + "'");
}

void write_inversion_csv(const std::string& path, const InversionMap& m) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    os << "x_m,y_m,sigma_z,phi\n";
    os << std::setprecision(9);
    for (std::size_t iy = 0; iy < m.ny; ++iy)
        for (std::size_t ix = 0; ix < m.nx; ++ix) {
            const std::size_t i = iy * m.nx + ix;
            os << m.x0 + static_cast<double>(ix) * m.dx << ','
               << m.y0 + static_cast<double>(iy) * m.dy << ',' << m.sigma_z[i]
               << ',' << m.phi[i] << '\n';
        }
    if (!os) throw io_error("write failed for '" + path + "'");
}

std::uint64_t fnv1a(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open '" + path + "' for hashing");
    std::uint64_t h = 14695981039346656037ull;
    char buf[65536];
    while (is.read(buf, sizeof(buf)) || is.gcount() > 0) {
        const auto n = static_cast<std::size_t>(is.gcount());
        for (std::size_t i = 0; i < n; ++i) {
            h ^= static_cast<std::uint8_t>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!is) break;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

} // namespace xcav
