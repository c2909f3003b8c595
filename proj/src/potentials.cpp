#include "ringdm/potentials.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "ringdm/errors.hpp"

namespace ringdm {

double WaveguideParams::sigma() const { return std::sqrt(1.0 - eccentricity * eccentricity); }

double WaveguideParams::semi_minor() const { return semi_major * sigma(); }

void WaveguideParams::validate() const {
    if (!(depth > 0.0)) throw ParameterError("waveguide.depth: must be positive");
    if (!(gamma > 0.0)) throw ParameterError("waveguide.gamma: must be positive");
    if (!(semi_major > 0.0)) throw ParameterError("waveguide.semi_major: must be positive");
    if (!(eccentricity >= 0.0 && eccentricity < 1.0))
        throw ParameterError("waveguide.eccentricity: must lie in [0, 1), got " +
                             std::to_string(eccentricity));
}

void HarmonicParams::validate() const {
    if (!(frequency > 0.0)) throw ParameterError("harmonic.frequency: must be positive");
}

double elliptic_radius(double x, double y, double eccentricity) {
    const double s2 = 1.0 - eccentricity * eccentricity;
    return std::sqrt(x * x + y * y / s2);
}

RealField2D elliptic_ring_potential(const GridPtr& grid, const WaveguideParams& w) {
    w.validate();
    if (grid->extent_x() <= 2.0 * w.semi_major || grid->extent_y() <= 2.0 * w.semi_minor())
        std::cerr << "[ringdm] warning: grid extent " << grid->extent_x() << "x"
                  << grid->extent_y() << " does not exceed the ring diameter "
                  << 2.0 * w.semi_major << "\n";

    RealField2D V(grid);
    const double inv_g2 = 1.0 / (w.gamma * w.gamma);
    for (int i = 0; i < grid->nx; ++i) {
        const double x = grid->x[i];
        for (int j = 0; j < grid->ny; ++j) {
            const double rho = elliptic_radius(x, grid->y[j], w.eccentricity);
            const double d = rho - w.semi_major;
            V.at(i, j) = w.depth * (1.0 - std::exp(-d * d * inv_g2));
        }
    }
    return V;
}

RealField2D harmonic_potential(const GridPtr& grid, const HarmonicParams& h) {
    h.validate();
    RealField2D V(grid);
    const double c = 0.5 * h.frequency * h.frequency;
    for (int i = 0; i < grid->nx; ++i) {
        const double x2 = grid->x[i] * grid->x[i];
        for (int j = 0; j < grid->ny; ++j) {
            const double y = grid->y[j];
            V.at(i, j) = c * (x2 + y * y);
        }
    }
    return V;
}

TrapSchedule TrapSchedule::single(RealField2D potential, double t_final) {
    TrapSchedule s;
    s.segments.push_back({0.0, std::move(potential)});
    s.t_final = t_final;
    return s;
}

void TrapSchedule::validate() const {
    if (segments.empty()) throw ConfigError("schedule: needs at least one segment");
    if (segments.front().switch_time != 0.0)
        throw ConfigError("schedule: first switch_time must be 0");
    for (std::size_t k = 1; k < segments.size(); ++k) {
        if (!(segments[k].switch_time > segments[k - 1].switch_time))
            throw ConfigError("schedule: switch times must be strictly increasing");
        require_same_grid(*segments[k].potential.grid, *segments[0].potential.grid, "schedule");
    }
    if (!(t_final >= segments.back().switch_time))
        throw ConfigError("schedule: t_final must cover the last switch");
}

std::size_t TrapSchedule::segment_at(double t) const {
    if (t < 0.0 || t > t_final)
        throw RangeError("schedule: t = " + std::to_string(t) + " outside [0, " +
                         std::to_string(t_final) + "]");
    std::size_t k = 0;
    while (k + 1 < segments.size() && segments[k + 1].switch_time <= t) ++k;
    return k;
}

const RealField2D& TrapSchedule::potential_at(double t) const {
    return segments[segment_at(t)].potential;
}

}  // namespace ringdm
