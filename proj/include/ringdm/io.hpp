#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "ringdm/evolution.hpp"
#include "ringdm/field.hpp"
#include "ringdm/units.hpp"

namespace ringdm {

/// Binary field dump, bit-exact layout (little-endian throughout):
///   magic "GPE2", u32 version = 1, u64 nx, u64 ny,
///   f64 dx, f64 dy, f64 x0, f64 y0, f64 t,
///   nx*ny complex samples as interleaved f64 (re, im), row-major.
void dump_field(const std::string& path, const ComplexField2D& field, double t);

struct LoadedField {
    ComplexField2D field;
    double t = 0.0;
};
LoadedField load_field(const std::string& path);

/// Doubles rendered with 17 significant digits (round-trip exact).
std::string format_double(double v);

/// Time-series CSV, header exactly:
///   t_dimless,t_ms,survival,norm,energy,width_x,width_y
/// t_ms uses the caption convention (1000/omega_perp ms per unit).
void write_time_series_csv(const std::string& path, const TimeSeries& ts,
                           const PhysicalParams& phys);

/// 8-bit grayscale PGM, density linearly mapped to [0, max] per frame.
void write_pgm_heatmap(const std::string& path, const RealField2D& density_field);

std::uint64_t fnv1a64_file(const std::string& path);

/// Run manifest, written atomically (tmp + rename) at run end. Every output
/// file of a run is listed with size and checksum.
class Manifest {
public:
    nlohmann::json& root() { return root_; }
    /// Records size + fnv1a64 checksum under the given display name.
    void add_file(const std::string& path, const std::string& display_name);
    void write(const std::string& path) const;

private:
    nlohmann::json root_ = nlohmann::json::object();
};

}  // namespace ringdm
