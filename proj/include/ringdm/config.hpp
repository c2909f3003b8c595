#pragma once

#include <map>
#include <string>
#include <vector>

#include "ringdm/evolution.hpp"
#include "ringdm/potentials.hpp"
#include "ringdm/units.hpp"

namespace ringdm {

/// Flat key-value configuration: one `section.key = value` per line,
/// '#' comments, later keys override earlier ones.
struct KeyValueConfig {
    std::map<std::string, std::string> entries;

    static KeyValueConfig parse_string(const std::string& text);
    static KeyValueConfig parse_file(const std::string& path);
    std::string serialize() const; // sorted `key = value` lines

    bool has(const std::string& key) const { return entries.count(key) != 0; }
    void set(const std::string& key, const std::string& value) { entries[key] = value; }
    const std::string& get(const std::string& key) const;

    /// Applies RINGDM_SECTION_KEY environment overrides.
    void apply_env_overrides();
};

/// Fully resolved experiment description.
struct ExperimentConfig {
    std::string experiment; // ground | evolve | sweep-beta | revival-table | interfere | oracle

    int grid_nx = 512;
    int grid_ny = 512;
    double grid_dx = 0.1;
    double grid_dy = 0.1;

    PhysicalParams physical;
    WaveguideParams waveguide;
    HarmonicParams harmonic;

    double alpha = 1.0;
    double beta = 1.0;
    bool beta_auto = false; // beta = 1 - eps^2

    double coupling_g = 2.0;
    bool coupling_auto = false; // derive from physical params

    double dt = 0.005;
    long steps = 0;
    double t_final = -1.0; // >= 0 overrides steps
    long record_stride = 10;
    double itp_tolerance = 1e-9;
    long itp_max_steps = 200000;
    long itp_probe_stride = 50;

    InitialStateParams initial;
    bool stretch_dm_auto = true; // y_scale = sigma when beta == 1 - eps^2

    std::vector<double> snapshot_times;
    bool snapshots_auto = true; // {T/8, T/6, T/4, T/2, T} of the predicted T_r

    double sweep_beta_min = 0.0; // 0 -> default span
    double sweep_beta_max = 0.0;
    int sweep_points = 25;

    std::vector<double> table_eccentricities{0.0, 0.25, 0.75, 0.9};

    double switch_time = -1.0; // < 0 -> quarter of the predicted revival
    double hold_time = 3.0;    // t_f after the switch

    std::string output_dir = "out";
    bool heatmaps = false;
    int jobs = 1;

    GridPtr make_grid_spec() const;
    double resolved_beta() const;
    double resolved_coupling() const;
    DispersionPair dispersion() const;
    EvolutionConfig evolution(EvolveMode mode) const;
    long resolved_steps() const;
    KeyValueConfig echo() const; // resolved values, round-trippable
};

/// Presets: "paper" = 512^2 grid with dx = 0.1, "ci" = 256^2 with dx = 0.2
/// (same physical extent).
void apply_preset(KeyValueConfig& kv, const std::string& preset);

/// Validates and resolves a key-value config. Collects every violated field
/// into one ConfigError message.
ExperimentConfig resolve_config(const KeyValueConfig& kv);

}  // namespace ringdm
