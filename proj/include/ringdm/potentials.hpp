#pragma once

#include <vector>

#include "ringdm/field.hpp"

namespace ringdm {

/// Elliptical Gaussian ring waveguide:
///   V(x,y) = V0 * { 1 - exp[ -(sqrt(x^2 + y^2/(1-eps^2)) - a)^2 / gamma^2 ] }
struct WaveguideParams {
    double depth = 10.0;       // V0, units of hbar*omega_perp
    double gamma = 1.0;        // channel width, a_perp
    double semi_major = 10.0;  // a, a_perp
    double eccentricity = 0.0; // eps in [0, 1)

    double semi_minor() const; // b = a*sqrt(1 - eps^2), derived
    double sigma() const;      // sqrt(1 - eps^2)
    void validate() const;     // throws ParameterError
};

struct HarmonicParams {
    double frequency = 0.5;    // omega_ho, units of omega_perp
    void validate() const;
};

/// Piecewise-constant trap schedule: the potential of the last segment with
/// switch_time <= t applies; switching is instantaneous.
struct TrapSchedule {
    struct Segment {
        double switch_time;
        RealField2D potential;
    };
    std::vector<Segment> segments; // switch times strictly increasing, first = 0
    double t_final = 0.0;

    static TrapSchedule single(RealField2D potential, double t_final);
    void validate() const;
    const RealField2D& potential_at(double t) const; // throws RangeError outside [0, t_final]
    std::size_t segment_at(double t) const;
};

/// Pointwise evaluation of the ring waveguide on the grid. Warns on stderr
/// when the grid extent does not exceed the ring diameter.
RealField2D elliptic_ring_potential(const GridPtr& grid, const WaveguideParams& w);

/// V(x,y) = 0.5 * omega_ho^2 * (x^2 + y^2)
RealField2D harmonic_potential(const GridPtr& grid, const HarmonicParams& h);

/// Elliptical radius sqrt(x^2 + y^2/(1-eps^2)) used by the ring potential.
double elliptic_radius(double x, double y, double eccentricity);

}  // namespace ringdm
