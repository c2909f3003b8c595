#include "ringdm/units.hpp"

#include <cmath>
#include <numbers>

#include "ringdm/errors.hpp"

namespace ringdm {

namespace {
constexpr double kHbar = 1.054571817e-34; // J s
}

double PhysicalParams::oscillator_length_m() const {
    if (a_perp_m > 0.0) return a_perp_m;
    if (!(atom_mass_kg > 0.0) || !(omega_perp > 0.0))
        throw ConfigError("physical: mass and omega_perp must be positive to derive a_perp");
    return std::sqrt(kHbar / (atom_mass_kg * omega_perp));
}

double coupling_from_params(const PhysicalParams& p) {
    if (p.atom_count < 0.0) throw ConfigError("physical.atom_count: must be non-negative");
    if (!(p.scattering_length_m > 0.0))
        throw ConfigError("physical.scattering_length_m: must be positive");
    const double a_perp = p.oscillator_length_m();
    if (!(a_perp > 0.0)) throw ConfigError("physical.a_perp_m: must be positive");
    return 2.0 * std::sqrt(std::numbers::pi) * p.atom_count * p.scattering_length_m / a_perp;
}

double to_physical_time_ms(double t_dimless, const PhysicalParams& p) {
    return t_dimless / p.omega_perp * 1e3;
}

double to_physical_length_um(double x_dimless, const PhysicalParams& p) {
    return x_dimless * p.oscillator_length_m() * 1e6;
}

double ms_per_time_unit_caption(const PhysicalParams& p) { return 1e3 / p.omega_perp; }

double ms_per_time_unit_table() { return 1.0 / 1.95; }

}  // namespace ringdm
