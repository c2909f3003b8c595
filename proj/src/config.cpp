#include "ringdm/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ringdm/errors.hpp"
#include "ringdm/io.hpp"
#include "ringdm/observables.hpp"

extern char** environ;

namespace ringdm {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
    KeyValueConfig kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        kv.entries[key] = value;
    }
    return kv;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

std::string KeyValueConfig::serialize() const {
    std::string out;
    for (const auto& [k, v] : entries) out += k + " = " + v + "\n";
    return out;
}

const std::string& KeyValueConfig::get(const std::string& key) const {
    auto it = entries.find(key);
    if (it == entries.end()) throw ConfigError("config: missing key " + key);
    return it->second;
}

void KeyValueConfig::apply_env_overrides() {
    const std::string prefix = "RINGDM_";
    for (char** e = environ; e && *e; ++e) {
        std::string entry(*e);
        if (entry.rfind(prefix, 0) != 0) continue;
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos) continue;
        std::string key = entry.substr(prefix.size(), eq - prefix.size());
        std::transform(key.begin(), key.end(), key.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        std::replace(key.begin(), key.end(), '_', '.');
        entries[key] = entry.substr(eq + 1);
    }
}

void apply_preset(KeyValueConfig& kv, const std::string& preset) {
    if (preset == "paper") {
        kv.set("grid.nx", "512");
        kv.set("grid.ny", "512");
        kv.set("grid.dx", "0.1");
        kv.set("grid.dy", "0.1");
    } else if (preset == "ci") {
        kv.set("grid.nx", "256");
        kv.set("grid.ny", "256");
        kv.set("grid.dx", "0.2");
        kv.set("grid.dy", "0.2");
    } else {
        throw ConfigError("preset: expected 'paper' or 'ci', got '" + preset + "'");
    }
}

namespace {

class Resolver {
public:
    explicit Resolver(const KeyValueConfig& kv) : kv_(kv) {}

    double number(const std::string& key, double fallback) {
        if (!kv_.has(key)) return fallback;
        return parse_number(key, kv_.get(key));
    }

    long integer(const std::string& key, long fallback) {
        if (!kv_.has(key)) return fallback;
        const double v = parse_number(key, kv_.get(key));
        return static_cast<long>(v);
    }

    bool flag(const std::string& key, bool fallback) {
        if (!kv_.has(key)) return fallback;
        const std::string& v = kv_.get(key);
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        errors_.push_back(key + ": expected boolean, got '" + v + "'");
        return fallback;
    }

    std::string text(const std::string& key, const std::string& fallback) {
        return kv_.has(key) ? kv_.get(key) : fallback;
    }

    void require(const std::string& key) {
        if (!kv_.has(key)) errors_.push_back(key + ": required for this experiment");
    }

    void fail(const std::string& msg) { errors_.push_back(msg); }

    void finish() const {
        if (errors_.empty()) return;
        std::string msg = "config validation failed:";
        for (const std::string& e : errors_) msg += "\n  - " + e;
        throw ConfigError(msg);
    }

private:
    double parse_number(const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument("trailing");
            return x;
        } catch (const std::exception&) {
            errors_.push_back(key + ": expected number, got '" + v + "'");
            return 0.0;
        }
    }

    const KeyValueConfig& kv_;
    std::vector<std::string> errors_;
};

}  // namespace

ExperimentConfig resolve_config(const KeyValueConfig& kv) {
    Resolver r(kv);
    ExperimentConfig c;

    c.experiment = r.text("experiment", "");
    static const std::vector<std::string> kinds{"ground",        "evolve",    "sweep-beta",
                                                "revival-table", "interfere", "oracle"};
    if (std::find(kinds.begin(), kinds.end(), c.experiment) == kinds.end())
        r.fail("experiment: expected one of ground|evolve|sweep-beta|revival-table|interfere|"
               "oracle, got '" +
               c.experiment + "'");

    c.grid_nx = static_cast<int>(r.integer("grid.nx", c.grid_nx));
    c.grid_ny = static_cast<int>(r.integer("grid.ny", c.grid_ny));
    c.grid_dx = r.number("grid.dx", c.grid_dx);
    c.grid_dy = r.number("grid.dy", c.grid_dy);

    c.physical.atom_count = r.number("physical.atom_count", c.physical.atom_count);
    c.physical.atom_mass_kg = r.number("physical.atom_mass_kg", c.physical.atom_mass_kg);
    c.physical.omega_perp = r.number("physical.omega_perp", c.physical.omega_perp);
    c.physical.scattering_length_m =
        r.number("physical.scattering_length_m", c.physical.scattering_length_m);
    c.physical.a_perp_m = r.number("physical.a_perp_m", 2.318e-6);

    const bool needs_waveguide = c.experiment != "oracle";
    if (needs_waveguide) {
        r.require("waveguide.depth");
        r.require("waveguide.gamma");
        r.require("waveguide.eccentricity");
        r.require("waveguide.semi_major");
    }
    c.waveguide.depth = r.number("waveguide.depth", c.waveguide.depth);
    c.waveguide.gamma = r.number("waveguide.gamma", c.waveguide.gamma);
    c.waveguide.semi_major = r.number("waveguide.semi_major", c.waveguide.semi_major);
    c.waveguide.eccentricity = r.number("waveguide.eccentricity", c.waveguide.eccentricity);

    c.harmonic.frequency = r.number("harmonic.frequency", c.harmonic.frequency);

    c.alpha = r.number("dispersion.alpha", c.alpha);
    const std::string beta_text = r.text("dispersion.beta", "auto");
    if (beta_text == "auto") {
        c.beta_auto = true;
    } else {
        c.beta_auto = false;
        c.beta = r.number("dispersion.beta", c.beta);
    }

    const std::string g_text = r.text("coupling.g", "2");
    if (g_text == "auto") {
        c.coupling_auto = true;
    } else {
        c.coupling_auto = false;
        c.coupling_g = r.number("coupling.g", c.coupling_g);
    }

    c.dt = r.number("evolution.dt", c.dt);
    c.steps = r.integer("evolution.steps", c.steps);
    c.t_final = r.number("run.t_final", c.t_final);
    c.record_stride = r.integer("evolution.record_stride", c.record_stride);
    c.itp_tolerance = r.number("evolution.tolerance", c.itp_tolerance);
    c.itp_max_steps = r.integer("evolution.max_steps", c.itp_max_steps);
    c.itp_probe_stride = r.integer("evolution.probe_stride", c.itp_probe_stride);

    const std::string kind = r.text("initial.kind", "binary_peaks");
    if (kind == "binary_peaks") c.initial.kind = InitialStateKind::binary_peaks;
    else if (kind == "ring_ansatz") c.initial.kind = InitialStateKind::ring_ansatz;
    else if (kind == "gaussian_packet") c.initial.kind = InitialStateKind::gaussian_packet;
    else r.fail("initial.kind: unknown kind '" + kind + "'");
    c.initial.azimuthal_width = r.number("initial.azimuthal_width", 1.0);
    c.initial.transverse_width = r.number("initial.transverse_width", 0.0);
    c.initial.rotated = r.flag("initial.rotated", false);
    c.initial.center_x = r.number("initial.center_x", 0.0);
    c.initial.center_y = r.number("initial.center_y", 0.0);
    c.initial.width_x = r.number("initial.width_x", 1.0);
    c.initial.width_y = r.number("initial.width_y", 1.0);
    c.stretch_dm_auto = r.flag("initial.stretch_dm", true);
    c.initial.waveguide = c.waveguide;

    const std::string snaps = r.text("run.snapshots", "auto");
    if (snaps == "auto") {
        c.snapshots_auto = true;
    } else if (snaps == "none") {
        c.snapshots_auto = false;
    } else {
        c.snapshots_auto = false;
        for (const std::string& item : split(snaps, ','))
            if (!item.empty()) c.snapshot_times.push_back(std::stod(item));
    }

    c.sweep_beta_min = r.number("sweep.beta_min", 0.0);
    c.sweep_beta_max = r.number("sweep.beta_max", 0.0);
    c.sweep_points = static_cast<int>(r.integer("sweep.points", 25));

    const std::string eccs = r.text("table.eccentricities", "");
    if (!eccs.empty()) {
        c.table_eccentricities.clear();
        for (const std::string& item : split(eccs, ','))
            if (!item.empty()) c.table_eccentricities.push_back(std::stod(item));
    }

    c.switch_time = r.number("interfere.switch_time", -1.0);
    c.hold_time = r.number("interfere.hold_time", 3.0);

    c.output_dir = r.text("output.dir", "out");
    c.heatmaps = r.flag("output.heatmaps", false);
    c.jobs = static_cast<int>(r.integer("run.jobs", 1));

    // Range checks that do not depend on module-level validation.
    if (c.grid_nx < 2 || (c.grid_nx & (c.grid_nx - 1)) != 0)
        r.fail("grid.nx: must be a power of two >= 2");
    if (c.grid_ny < 2 || (c.grid_ny & (c.grid_ny - 1)) != 0)
        r.fail("grid.ny: must be a power of two >= 2");
    if (!(c.grid_dx > 0.0)) r.fail("grid.dx: must be positive");
    if (!(c.grid_dy > 0.0)) r.fail("grid.dy: must be positive");
    if (needs_waveguide) {
        if (!(c.waveguide.depth > 0.0)) r.fail("waveguide.depth: must be positive");
        if (!(c.waveguide.gamma > 0.0)) r.fail("waveguide.gamma: must be positive");
        if (!(c.waveguide.semi_major > 0.0)) r.fail("waveguide.semi_major: must be positive");
        if (!(c.waveguide.eccentricity >= 0.0 && c.waveguide.eccentricity < 1.0))
            r.fail("waveguide.eccentricity: must lie in [0, 1)");
    }
    if (!(c.alpha > 0.0)) r.fail("dispersion.alpha: must be positive");
    if (!c.beta_auto && !(c.beta > 0.0)) r.fail("dispersion.beta: must be positive or 'auto'");
    if (!(c.dt != 0.0)) r.fail("evolution.dt: must be nonzero");
    if (c.record_stride < 1) r.fail("evolution.record_stride: must be >= 1");
    if (!(c.harmonic.frequency > 0.0)) r.fail("harmonic.frequency: must be positive");
    if (c.experiment == "evolve" && c.steps <= 0 && c.t_final < 0.0)
        r.fail("evolution.steps or run.t_final: required for evolve");
    if (c.jobs < 1) r.fail("run.jobs: must be >= 1");

    r.finish();
    return c;
}

GridPtr ExperimentConfig::make_grid_spec() const {
    return make_grid(grid_nx, grid_ny, grid_dx, grid_dy);
}

double ExperimentConfig::resolved_beta() const {
    if (!beta_auto) return beta;
    const double e = waveguide.eccentricity;
    return 1.0 - e * e;
}

double ExperimentConfig::resolved_coupling() const {
    return coupling_auto ? coupling_from_params(physical) : coupling_g;
}

DispersionPair ExperimentConfig::dispersion() const { return {alpha, resolved_beta()}; }

long ExperimentConfig::resolved_steps() const {
    if (t_final >= 0.0) return std::lround(t_final / dt);
    return steps;
}

EvolutionConfig ExperimentConfig::evolution(EvolveMode mode) const {
    EvolutionConfig e;
    e.dt = dt;
    e.mode = mode;
    e.coupling = resolved_coupling();
    e.record_stride = record_stride;
    e.convergence_tol = itp_tolerance;
    e.probe_stride = itp_probe_stride;
    e.n_steps = (mode == EvolveMode::imaginary) ? itp_max_steps : resolved_steps();
    return e;
}

KeyValueConfig ExperimentConfig::echo() const {
    KeyValueConfig kv;
    kv.set("experiment", experiment);
    kv.set("grid.nx", std::to_string(grid_nx));
    kv.set("grid.ny", std::to_string(grid_ny));
    kv.set("grid.dx", format_double(grid_dx));
    kv.set("grid.dy", format_double(grid_dy));
    kv.set("physical.atom_count", format_double(physical.atom_count));
    kv.set("physical.atom_mass_kg", format_double(physical.atom_mass_kg));
    kv.set("physical.omega_perp", format_double(physical.omega_perp));
    kv.set("physical.scattering_length_m", format_double(physical.scattering_length_m));
    kv.set("physical.a_perp_m", format_double(physical.a_perp_m));
    kv.set("waveguide.depth", format_double(waveguide.depth));
    kv.set("waveguide.gamma", format_double(waveguide.gamma));
    kv.set("waveguide.semi_major", format_double(waveguide.semi_major));
    kv.set("waveguide.eccentricity", format_double(waveguide.eccentricity));
    kv.set("harmonic.frequency", format_double(harmonic.frequency));
    kv.set("dispersion.alpha", format_double(alpha));
    kv.set("dispersion.beta", beta_auto ? "auto" : format_double(beta));
    kv.set("coupling.g", coupling_auto ? "auto" : format_double(coupling_g));
    kv.set("evolution.dt", format_double(dt));
    kv.set("evolution.steps", std::to_string(steps));
    kv.set("evolution.record_stride", std::to_string(record_stride));
    kv.set("evolution.tolerance", format_double(itp_tolerance));
    kv.set("evolution.max_steps", std::to_string(itp_max_steps));
    kv.set("output.dir", output_dir);
    return kv;
}

}  // namespace ringdm
