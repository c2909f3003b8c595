#include "ringdm/io.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "ringdm/errors.hpp"

namespace ringdm {

namespace {

constexpr char kMagic[4] = {'G', 'P', 'E', '2'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_raw(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_raw(std::ifstream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
}

}  // namespace

void dump_field(const std::string& path, const ComplexField2D& field, double t) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("dump_field: cannot write " + path);
    const GridSpec& g = *field.grid;
    out.write(kMagic, 4);
    write_raw(out, kVersion);
    write_raw(out, static_cast<std::uint64_t>(g.nx));
    write_raw(out, static_cast<std::uint64_t>(g.ny));
    write_raw(out, g.dx);
    write_raw(out, g.dy);
    write_raw(out, g.x0);
    write_raw(out, g.y0);
    write_raw(out, t);
    out.write(reinterpret_cast<const char*>(field.values.data()),
              static_cast<std::streamsize>(field.values.size() * sizeof(Complex)));
    if (!out) throw ConfigError("dump_field: short write to " + path);
}

LoadedField load_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("load_field: cannot read " + path);
    char magic[4];
    in.read(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw ConfigError("load_field: bad magic in " + path);
    std::uint32_t version = 0;
    read_raw(in, version);
    if (version != kVersion)
        throw ConfigError("load_field: unsupported version " + std::to_string(version));
    std::uint64_t nx = 0, ny = 0;
    double dx = 0, dy = 0, x0 = 0, y0 = 0, t = 0;
    read_raw(in, nx);
    read_raw(in, ny);
    read_raw(in, dx);
    read_raw(in, dy);
    read_raw(in, x0);
    read_raw(in, y0);
    read_raw(in, t);

    LoadedField lf;
    lf.t = t;
    lf.field = ComplexField2D(make_grid(static_cast<int>(nx), static_cast<int>(ny), dx, dy));
    in.read(reinterpret_cast<char*>(lf.field.values.data()),
            static_cast<std::streamsize>(lf.field.values.size() * sizeof(Complex)));
    if (!in) throw ConfigError("load_field: truncated file " + path);
    return lf;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_time_series_csv(const std::string& path, const TimeSeries& ts,
                           const PhysicalParams& phys) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError("csv: cannot write " + path);
    out << "t_dimless,t_ms,survival,norm,energy,width_x,width_y\n";
    for (std::size_t k = 0; k < ts.times.size(); ++k) {
        out << format_double(ts.times[k]) << ','
            << format_double(to_physical_time_ms(ts.times[k], phys)) << ','
            << format_double(ts.survival[k]) << ',' << format_double(ts.norm[k]) << ','
            << format_double(ts.energy[k]) << ',' << format_double(ts.width_x[k]) << ','
            << format_double(ts.width_y[k]) << '\n';
    }
}

void write_pgm_heatmap(const std::string& path, const RealField2D& density_field) {
    const GridSpec& g = *density_field.grid;
    double peak = 0.0;
    for (double v : density_field.values) peak = std::max(peak, v);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("heatmap: cannot write " + path);
    out << "P5\n" << g.nx << " " << g.ny << "\n255\n";
    // Image rows run top to bottom: j = ny-1 first.
    std::vector<unsigned char> row(g.nx);
    for (int j = g.ny - 1; j >= 0; --j) {
        for (int i = 0; i < g.nx; ++i) {
            const double v = peak > 0.0 ? density_field.at(i, j) / peak : 0.0;
            row[i] = static_cast<unsigned char>(std::min(255.0, v * 255.0 + 0.5));
        }
        out.write(reinterpret_cast<const char*>(row.data()), g.nx);
    }
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("checksum: cannot read " + path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[65536];
    while (in) {
        in.read(buf, sizeof(buf));
        const std::streamsize got = in.gcount();
        for (std::streamsize k = 0; k < got; ++k) {
            h ^= static_cast<unsigned char>(buf[k]);
            h *= 1099511628211ull;
        }
    }
    return h;
}

void Manifest::add_file(const std::string& path, const std::string& display_name) {
    nlohmann::json entry;
    entry["path"] = display_name;
    entry["bytes"] = static_cast<std::uint64_t>(std::filesystem::file_size(path));
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64_file(path)));
    entry["fnv1a64"] = buf;
    if (!root_.contains("files")) root_["files"] = nlohmann::json::array();
    root_["files"].push_back(entry);
}

void Manifest::write(const std::string& path) const {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ConfigError("manifest: cannot write " + tmp);
        out << root_.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace ringdm
