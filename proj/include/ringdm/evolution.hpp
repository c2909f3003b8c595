#pragma once

#include <optional>
#include <vector>

#include "ringdm/fft.hpp"
#include "ringdm/field.hpp"
#include "ringdm/potentials.hpp"

namespace ringdm {

/// Anisotropic kinetic coefficients of the managed dispersion equation
///   i psi_t = [ -(alpha/2) d_xx - (beta/2) d_yy + g|psi|^2 + V ] psi
struct DispersionPair {
    double alpha = 1.0;
    double beta = 1.0;
    void validate() const;
};

enum class EvolveMode { real, imaginary };

struct EvolutionConfig {
    double dt = 0.005;
    long n_steps = 0;
    EvolveMode mode = EvolveMode::real;
    double coupling = 0.0;          // g
    long record_stride = 1;
    std::vector<double> snapshot_times;
    double convergence_tol = 1e-9;  // imaginary mode
    long probe_stride = 50;         // imaginary mode: steps between mu probes
    void validate() const;
};

/// Recorded scalar observables, one entry per record instant.
struct TimeSeries {
    std::vector<double> times;
    std::vector<double> survival;
    std::vector<double> norm;
    std::vector<double> energy;
    std::vector<double> chemical_potential; // imaginary mode only
    std::vector<double> width_x;
    std::vector<double> width_y;
};

struct Snapshot {
    double time = 0.0;
    ComplexField2D field;
};

/// One Strang-split step of the managed GPE. Functional form used by tests;
/// drivers below reuse cached factors instead.
ComplexField2D split_step(const ComplexField2D& f, const RealField2D& V,
                          const DispersionPair& disp, double g, double dt, EvolveMode mode);

/// Stepping engine with cached kinetic/potential phase factors.
class Propagator {
public:
    Propagator(GridPtr grid, DispersionPair disp, double g, double dt, EvolveMode mode);

    void set_potential(const RealField2D& V);
    void set_dt(double dt);

    /// Advances values by one step in place. Imaginary mode does not
    /// renormalize here; callers do (the ITP driver renormalizes per step).
    void step(std::vector<Complex>& values) const;

    /// E = int [ (alpha kx^2 + beta ky^2)/2 |psi_k|^2 ] + int [ V + (g/2)|psi|^2 ] |psi|^2
    double energy(const std::vector<Complex>& values) const;
    /// mu = E_kin + int [ V + g|psi|^2 ] |psi|^2
    double chemical_potential(const std::vector<Complex>& values) const;

    const GridSpec& grid() const { return *grid_; }

private:
    GridPtr grid_;
    DispersionPair disp_;
    double g_;
    double dt_;
    EvolveMode mode_;
    SpectralTransform fft_;
    std::vector<double> kinetic_phase_;   // (alpha kx^2 + beta ky^2)/2
    std::vector<Complex> kinetic_factor_;
    std::vector<double> potential_;
    std::vector<Complex> potential_half_factor_;
    mutable std::vector<Complex> scratch_;

    void rebuild_kinetic_factor();
    void rebuild_potential_factor();
};

struct GroundStateResult {
    ComplexField2D state;
    double chemical_potential = 0.0;
    double energy = 0.0;
    long iterations = 0;
    std::vector<double> energy_trace; // sampled every probe_stride
};

/// Imaginary-time propagation until |mu_k+1 - mu_k|/|mu_k| < convergence_tol
/// between probes. Throws ConvergenceError when n_steps is exhausted first.
GroundStateResult ground_state_itp(const RealField2D& V, const DispersionPair& disp, double g,
                                   const EvolutionConfig& cfg, const ComplexField2D& seed);

struct EvolutionResult {
    TimeSeries series;
    std::vector<Snapshot> snapshots;
};

/// Real-time propagation under a trap schedule, recording survival, norm,
/// energy and widths every record_stride steps and capturing density
/// snapshots at the requested times (matched to the nearest step).
EvolutionResult evolve_with_schedule(const ComplexField2D& f0, const TrapSchedule& schedule,
                                     const DispersionPair& disp, double g,
                                     const EvolutionConfig& cfg);

enum class InitialStateKind { binary_peaks, ring_ansatz, gaussian_packet };

struct InitialStateParams {
    InitialStateKind kind = InitialStateKind::binary_peaks;
    WaveguideParams waveguide;
    // binary_peaks
    double azimuthal_width = 1.0;   // psi 1/e^(1/2) width along the ring tangent
    double transverse_width = 0.0;  // 0 -> channel width (gamma^2/V0)^(1/4)
    bool rotated = false;           // peaks at (0, +-b) instead of (+-a, 0)
    double y_scale = 1.0;           // stretches peak y-widths (dispersion-managed runs)
    // gaussian_packet
    double center_x = 0.0;
    double center_y = 0.0;
    double width_x = 1.0;
    double width_y = 1.0;
};

/// Normalized analytic initial states: symmetric binary peaks on the ring,
/// the Gaussian-ring ground-state ansatz, or a single Gaussian packet.
ComplexField2D make_initial_state(const GridPtr& grid, const InitialStateParams& p);

/// Elliptic Gaussian ring ansatz (the circular ground-state profile with the
/// radius replaced by the elliptical one), numerically normalized.
ComplexField2D ring_ansatz_state(const GridPtr& grid, const WaveguideParams& w);

/// Default transverse channel psi-width (gamma^2/V0)^(1/4).
double channel_width(const WaveguideParams& w);

}  // namespace ringdm
