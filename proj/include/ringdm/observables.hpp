#pragma once

#include <complex>
#include <vector>

#include "ringdm/evolution.hpp"
#include "ringdm/field.hpp"
#include "ringdm/potentials.hpp"

namespace ringdm {

/// A(t) = int psi0* psi(t) dx dy
Complex autocorrelation(const ComplexField2D& f0, const ComplexField2D& ft);

/// S(t) = |A(t)|^2, clamped into [0, 1] rounding slack.
double survival(const ComplexField2D& f0, const ComplexField2D& ft);

/// Density-overlap functional
///   Lambda = [ int n_e n_a ]^2 / ( int n_e^2  int n_a^2 ),
/// 1 iff the densities are proportional (Cauchy-Schwarz equality).
double overlap_lambda(const ComplexField2D& expected, const ComplexField2D& actual);

/// Expected uniform ring state used as the overlap reference: the Gaussian
/// ring ansatz with the elliptical radius.
ComplexField2D expected_uniform_state(const GridPtr& grid, const WaveguideParams& w);

/// Density along the row nearest y = 0 (Axis::x) or column nearest x = 0
/// (Axis::y). Even grids sample index n/2, i.e. the coordinate exactly 0.
struct CrossSection {
    std::vector<double> coordinate;
    std::vector<double> density;
};
CrossSection cross_section_density(const ComplexField2D& f, Axis axis);

/// C = a * integral_0^2pi sqrt(1 - eps^2 sin^2 phi) dphi, adaptive Simpson
/// to ~1e-12 relative.
double ellipse_circumference(double semi_major, double eccentricity);

/// T_r = C^2 / (4 pi)
double revival_time_predict(double circumference);

struct FRFraction {
    int p = 1;
    int q = 1;
};

/// t = (p/q) T_r for each fraction; non-coprime p/q are reduced with a
/// warning on stderr.
std::vector<double> fr_times(double revival_time, const std::vector<FRFraction>& fractions);

/// Time of the global maximum of S(t) inside [window_lo, window_hi], refined
/// by quadratic interpolation through the three samples around the maximum.
double measure_revival_time(const TimeSeries& ts, double window_lo, double window_hi);

/// Angular density profile in elliptical-angle bins over the ring annulus,
/// and the number of distinct lobes (connected above-threshold arcs, circular
/// adjacency). threshold is relative to the profile maximum.
std::vector<double> angular_density(const ComplexField2D& f, const WaveguideParams& w, int bins);
int count_fr_lobes(const ComplexField2D& f, const WaveguideParams& w, double threshold,
                   int bins = 256);

struct FringePeriods {
    double period_x = 0.0;      // u, grid units
    double period_y = 0.0;      // v, grid units
    double wavenumber_x = 0.0;
    double wavenumber_y = 0.0;
};

/// Dominant fringe periods of an interference pattern, read from the central
/// row (x direction) and central column (y direction): largest strict local
/// maximum of the profile's spectrum at k >= k_min, refined by parabolic
/// interpolation. u = 2 pi / k_x*. The central-line readout keeps the
/// cross-pair lattice component that transverse integration averages away.
FringePeriods fringe_periods(const RealField2D& density_field, double k_min = 0.5);

struct BetaSweepResult {
    double eccentricity = 0.0;
    std::vector<double> beta;    // every sampled point, ascending
    std::vector<double> lambda;  // overlap at each point
    double beta_c = 0.0;         // argmax, always one of the sampled points
    ComplexField2D state_at_best;
};

struct BetaSweepConfig {
    double beta_min = 0.0;  // 0 -> default span around 1 - eps^2
    double beta_max = 0.0;
    int coarse_points = 25;
    int refine_points = 9;
    EvolutionConfig itp;
};

/// Ground-state overlap sweep over beta at alpha = 1: ITP at each beta
/// (warm-started from the previous solution), Lambda against the expected
/// uniform state, one refinement pass around the coarse argmax.
BetaSweepResult beta_sweep(const GridPtr& grid, const WaveguideParams& w, double g,
                           const BetaSweepConfig& cfg);

}  // namespace ringdm
