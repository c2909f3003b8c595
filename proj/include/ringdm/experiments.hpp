#pragma once

#include <string>
#include <vector>

#include "ringdm/config.hpp"
#include "ringdm/evolution.hpp"
#include "ringdm/observables.hpp"

namespace ringdm {

/// Ground-state solve for the configured waveguide and dispersion.
struct GroundRun {
    GroundStateResult result;
    double beta_used = 0.0;
    double lambda = 0.0; // overlap with the expected uniform ring state
};
GroundRun run_ground(const ExperimentConfig& cfg);

/// One binary-peak revival run at a given eccentricity, with or without
/// dispersion management, measured against its own prediction window.
struct RevivalMeasurement {
    double eccentricity = 0.0;
    bool dispersion_managed = false;
    double t_predicted = 0.0; // ellipse prediction (non-DM) or circular (DM)
    double window_lo = 0.0;
    double window_hi = 0.0;
    double t_measured = 0.0;  // dimensionless
    TimeSeries series;
    std::vector<Snapshot> snapshots;
};
RevivalMeasurement run_revival(const ExperimentConfig& cfg, double eccentricity,
                               bool dispersion_managed);

/// Full revival table (eccentricities x {DM off, DM on}).
std::vector<RevivalMeasurement> run_revival_table(const ExperimentConfig& cfg);

/// Interferometry: ring evolution to the switch time, then free interference
/// in the harmonic trap with isotropic dispersion restored.
struct InterferenceRun {
    double switch_time = 0.0;
    double capture_time = 0.0; // absolute, switch + hold
    RealField2D final_density;
    FringePeriods periods;     // grid units
    double period_x_um = 0.0;
    double period_y_um = 0.0;
    double period_ratio = 0.0; // min/max, equals sqrt(1-eps^2) for the ring
    TimeSeries ring_series;
    TimeSeries trap_series;
};
InterferenceRun run_interfere(const ExperimentConfig& cfg);

struct OracleCheck {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double residual = 0.0; // relative where meaningful
    double tolerance = 0.0;
    bool pass = false;
};
std::vector<OracleCheck> run_oracle_checks(const ExperimentConfig& cfg);

/// Executes the configured experiment end to end, writing CSVs, field dumps,
/// optional heatmaps and the run manifest into cfg.output_dir.
/// Returns the process exit code (0 ok; 2/3/4 per error class).
int run_experiment(const ExperimentConfig& cfg, const std::string& config_echo_text);

}  // namespace ringdm
