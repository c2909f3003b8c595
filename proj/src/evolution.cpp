#include "ringdm/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ringdm/errors.hpp"
#include "ringdm/observables.hpp"

namespace ringdm {

void DispersionPair::validate() const {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw ParameterError("dispersion: alpha and beta must be positive");
}

void EvolutionConfig::validate() const {
    if (!(dt != 0.0)) throw ConfigError("evolution.dt: must be nonzero");
    if (n_steps < 0) throw ConfigError("evolution.steps: must be non-negative");
    if (record_stride < 1) throw ConfigError("evolution.record_stride: must be >= 1");
    if (mode == EvolveMode::imaginary && !(convergence_tol > 0.0))
        throw ConfigError("evolution.tolerance: must be positive in imaginary mode");
}

Propagator::Propagator(GridPtr grid, DispersionPair disp, double g, double dt, EvolveMode mode)
    : grid_(std::move(grid)), disp_(disp), g_(g), dt_(dt), mode_(mode), fft_(*grid_) {
    disp_.validate();
    const GridSpec& gr = *grid_;
    kinetic_phase_.resize(gr.size());
    for (int i = 0; i < gr.nx; ++i) {
        const double kx2 = gr.kx[i] * gr.kx[i];
        for (int j = 0; j < gr.ny; ++j) {
            const double ky2 = gr.ky[j] * gr.ky[j];
            kinetic_phase_[gr.index(i, j)] = 0.5 * (disp_.alpha * kx2 + disp_.beta * ky2);
        }
    }
    potential_.assign(gr.size(), 0.0);
    rebuild_kinetic_factor();
    rebuild_potential_factor();
}

void Propagator::rebuild_kinetic_factor() {
    kinetic_factor_.resize(kinetic_phase_.size());
    for (std::size_t k = 0; k < kinetic_phase_.size(); ++k) {
        const double ph = kinetic_phase_[k] * dt_;
        kinetic_factor_[k] = (mode_ == EvolveMode::real)
                                 ? Complex(std::cos(ph), -std::sin(ph))
                                 : Complex(std::exp(-ph), 0.0);
    }
}

void Propagator::rebuild_potential_factor() {
    potential_half_factor_.resize(potential_.size());
    for (std::size_t k = 0; k < potential_.size(); ++k) {
        const double ph = 0.5 * potential_[k] * dt_;
        potential_half_factor_[k] = (mode_ == EvolveMode::real)
                                        ? Complex(std::cos(ph), -std::sin(ph))
                                        : Complex(std::exp(-ph), 0.0);
    }
}

void Propagator::set_potential(const RealField2D& V) {
    require_same_grid(*V.grid, *grid_, "propagator");
    potential_ = V.values;
    rebuild_potential_factor();
}

void Propagator::set_dt(double dt) {
    dt_ = dt;
    rebuild_kinetic_factor();
    rebuild_potential_factor();
}

void Propagator::step(std::vector<Complex>& values) const {
    const std::size_t n = values.size();
    const double half = 0.5 * g_ * dt_;
    // Half step of the coordinate-space factor exp(-i dt/2 (V + g|psi|^2)).
    // The nonlinear sub-flow leaves |psi|^2 invariant, so this factor is the
    // exact propagator of its split part.
    if (g_ != 0.0) {
        if (mode_ == EvolveMode::real) {
            for (std::size_t k = 0; k < n; ++k) {
                const double ph = half * std::norm(values[k]);
                values[k] *= potential_half_factor_[k] * Complex(std::cos(ph), -std::sin(ph));
            }
        } else {
            for (std::size_t k = 0; k < n; ++k)
                values[k] *= potential_half_factor_[k] * std::exp(-half * std::norm(values[k]));
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) values[k] *= potential_half_factor_[k];
    }

    fft_.forward(values);
    for (std::size_t k = 0; k < n; ++k) values[k] *= kinetic_factor_[k];
    fft_.backward(values);

    if (g_ != 0.0) {
        if (mode_ == EvolveMode::real) {
            for (std::size_t k = 0; k < n; ++k) {
                const double ph = half * std::norm(values[k]);
                values[k] *= potential_half_factor_[k] * Complex(std::cos(ph), -std::sin(ph));
            }
        } else {
            for (std::size_t k = 0; k < n; ++k)
                values[k] *= potential_half_factor_[k] * std::exp(-half * std::norm(values[k]));
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) values[k] *= potential_half_factor_[k];
    }
}

double Propagator::energy(const std::vector<Complex>& values) const {
    const double area = grid_->cell_area();
    double pot = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double n = std::norm(values[k]);
        pot += (potential_[k] + 0.5 * g_ * n) * n;
    }
    pot *= area;

    scratch_ = values;
    fft_.forward(scratch_);
    // Parseval: sum |psi_k|^2 = N * sum |psi|^2, so the spectral measure is
    // area / N per mode.
    double kin = 0.0;
    for (std::size_t k = 0; k < scratch_.size(); ++k)
        kin += kinetic_phase_[k] * std::norm(scratch_[k]);
    kin *= area / static_cast<double>(grid_->size());
    return kin + pot;
}

double Propagator::chemical_potential(const std::vector<Complex>& values) const {
    const double area = grid_->cell_area();
    double extra = 0.0; // mu = E + (g/2) int |psi|^4
    for (const Complex& v : values) {
        const double n = std::norm(v);
        extra += 0.5 * g_ * n * n;
    }
    return energy(values) + extra * area;
}

ComplexField2D split_step(const ComplexField2D& f, const RealField2D& V,
                          const DispersionPair& disp, double g, double dt, EvolveMode mode) {
    require_same_grid(*f.grid, *V.grid, "split_step");
    Propagator prop(f.grid, disp, g, dt, mode);
    prop.set_potential(V);
    ComplexField2D out = f;
    prop.step(out.values);
    if (!out.finite()) throw NumericalError("split_step: non-finite value after step");
    if (mode == EvolveMode::imaginary) out = normalize(out);
    return out;
}

GroundStateResult ground_state_itp(const RealField2D& V, const DispersionPair& disp, double g,
                                   const EvolutionConfig& cfg, const ComplexField2D& seed) {
    cfg.validate();
    require_same_grid(*V.grid, *seed.grid, "ground_state_itp");
    if (!(seed.norm() > 0.0)) throw DegenerateFieldError("ground_state_itp: zero seed");

    Propagator prop(seed.grid, disp, g, std::abs(cfg.dt), EvolveMode::imaginary);
    prop.set_potential(V);

    ComplexField2D state = normalize(seed);
    GroundStateResult res;
    double mu_prev = 0.0;
    bool have_prev = false;
    const long probe = std::max<long>(1, cfg.probe_stride);

    long k = 0;
    for (; k < cfg.n_steps; ++k) {
        prop.step(state.values);
        const double n = state.norm();
        if (!(n > 0.0) || !state.finite())
            throw NumericalError("ground_state_itp: field degenerated at step " +
                                 std::to_string(k));
        const double inv = 1.0 / n;
        for (Complex& v : state.values) v *= inv;

        if ((k + 1) % probe == 0) {
            const double mu = prop.chemical_potential(state.values);
            res.energy_trace.push_back(prop.energy(state.values));
            if (have_prev && std::abs(mu - mu_prev) < cfg.convergence_tol * std::abs(mu)) {
                mu_prev = mu;
                ++k;
                break;
            }
            mu_prev = mu;
            have_prev = true;
        }
    }
    if (k >= cfg.n_steps) {
        const double mu = prop.chemical_potential(state.values);
        const double resid = have_prev ? std::abs(mu - mu_prev) / std::abs(mu) : 1.0;
        throw ConvergenceError("ground_state_itp: no convergence within " +
                               std::to_string(cfg.n_steps) +
                               " steps (relative mu residual " + std::to_string(resid) + ")");
    }

    res.state = std::move(state);
    res.chemical_potential = mu_prev;
    res.energy = prop.energy(res.state.values);
    res.iterations = k;
    return res;
}

EvolutionResult evolve_with_schedule(const ComplexField2D& f0, const TrapSchedule& schedule,
                                     const DispersionPair& disp, double g,
                                     const EvolutionConfig& cfg) {
    cfg.validate();
    schedule.validate();
    require_same_grid(*f0.grid, *schedule.segments[0].potential.grid, "evolve_with_schedule");
    const double t_end = cfg.dt * static_cast<double>(cfg.n_steps);
    if (schedule.t_final + 1e-12 < t_end)
        throw ContractError("evolve_with_schedule: schedule covers [0, " +
                            std::to_string(schedule.t_final) + "] but run ends at " +
                            std::to_string(t_end));

    Propagator prop(f0.grid, disp, g, cfg.dt, EvolveMode::real);
    std::size_t seg = 0;
    prop.set_potential(schedule.segments[seg].potential);

    // Snapshot times -> nearest step index.
    std::vector<std::pair<long, double>> snap_steps;
    for (double ts : cfg.snapshot_times) {
        long idx = std::lround(ts / cfg.dt);
        idx = std::clamp<long>(idx, 0, cfg.n_steps);
        snap_steps.emplace_back(idx, ts);
    }
    std::sort(snap_steps.begin(), snap_steps.end());

    ComplexField2D state = f0;
    const ComplexField2D& initial = f0;
    EvolutionResult out;

    auto record = [&](long step) {
        const double t = step * cfg.dt;
        const double nrm = state.norm();
        if (!state.finite() || std::abs(nrm - 1.0) > 1e-3)
            throw NumericalError("evolve_with_schedule: blow-up at step " + std::to_string(step) +
                                 " (t = " + std::to_string(t) + ", norm = " + std::to_string(nrm) +
                                 "); last good record at t = " +
                                 std::to_string(out.series.times.empty() ? 0.0
                                                                         : out.series.times.back()));
        out.series.times.push_back(t);
        out.series.survival.push_back(survival(initial, state));
        out.series.norm.push_back(nrm);
        out.series.energy.push_back(prop.energy(state.values));
        out.series.width_x.push_back(second_moment_width(state, Axis::x));
        out.series.width_y.push_back(second_moment_width(state, Axis::y));
    };

    auto snapshot = [&](long step) {
        while (!snap_steps.empty() && snap_steps.front().first == step) {
            out.snapshots.push_back({step * cfg.dt, state});
            snap_steps.erase(snap_steps.begin());
        }
    };

    record(0);
    snapshot(0);
    for (long k = 1; k <= cfg.n_steps; ++k) {
        const double t_before = (k - 1) * cfg.dt;
        const std::size_t want = schedule.segment_at(std::min(t_before, schedule.t_final));
        if (want != seg) {
            seg = want;
            prop.set_potential(schedule.segments[seg].potential);
        }
        prop.step(state.values);
        if (k % cfg.record_stride == 0 || k == cfg.n_steps) record(k);
        snapshot(k);
    }
    return out;
}

double channel_width(const WaveguideParams& w) {
    return std::pow(w.gamma * w.gamma / w.depth, 0.25);
}

ComplexField2D ring_ansatz_state(const GridPtr& grid, const WaveguideParams& w) {
    w.validate();
    ComplexField2D f(grid);
    const double c = std::sqrt(w.depth) / (2.0 * w.gamma);
    for (int i = 0; i < grid->nx; ++i) {
        const double x = grid->x[i];
        for (int j = 0; j < grid->ny; ++j) {
            const double d = elliptic_radius(x, grid->y[j], w.eccentricity) - w.semi_major;
            f.at(i, j) = std::exp(-c * d * d);
        }
    }
    return normalize(f);
}

ComplexField2D make_initial_state(const GridPtr& grid, const InitialStateParams& p) {
    switch (p.kind) {
        case InitialStateKind::ring_ansatz:
            return ring_ansatz_state(grid, p.waveguide);
        case InitialStateKind::gaussian_packet: {
            if (!(p.width_x > 0.0) || !(p.width_y > 0.0))
                throw ParameterError("initial: packet widths must be positive");
            if (p.center_x < grid->x.front() || p.center_x > grid->x.back() ||
                p.center_y < grid->y.front() || p.center_y > grid->y.back())
                throw ParameterError("initial: packet center outside the grid");
            ComplexField2D f(grid);
            const double cx = 0.5 / (p.width_x * p.width_x);
            const double cy = 0.5 / (p.width_y * p.width_y);
            for (int i = 0; i < grid->nx; ++i) {
                const double ddx = grid->x[i] - p.center_x;
                for (int j = 0; j < grid->ny; ++j) {
                    const double ddy = grid->y[j] - p.center_y;
                    f.at(i, j) = std::exp(-cx * ddx * ddx - cy * ddy * ddy);
                }
            }
            return normalize(f);
        }
        case InitialStateKind::binary_peaks: {
            p.waveguide.validate();
            const double a = p.waveguide.semi_major;
            const double b = p.waveguide.semi_minor();
            const double wt = (p.transverse_width > 0.0) ? p.transverse_width
                                                         : channel_width(p.waveguide);
            const double wa = p.azimuthal_width;
            if (!(wa > 0.0)) throw ParameterError("initial.azimuthal_width: must be positive");
            // Peaks sit on the ring: (+-a, 0), or (0, +-b) when rotated. The
            // transverse width is the cross-channel one; the azimuthal width
            // lies along the local ring tangent. y widths get scaled by
            // y_scale so dispersion-managed runs can start from the exact
            // stretch of the circular state.
            const double c1x = p.rotated ? wa : wt;
            const double c1y = p.rotated ? wt : wa;
            const double sx = 0.5 / (c1x * c1x);
            const double sy = 0.5 / (c1y * c1y * p.y_scale * p.y_scale);
            const double px = p.rotated ? 0.0 : a;
            const double py = p.rotated ? b : 0.0;
            if (px > grid->x.back() || py > grid->y.back())
                throw ParameterError("initial: peak centers outside the grid");
            ComplexField2D f(grid);
            for (int i = 0; i < grid->nx; ++i) {
                const double x = grid->x[i];
                for (int j = 0; j < grid->ny; ++j) {
                    const double y = grid->y[j];
                    const double e1 = sx * (x - px) * (x - px) + sy * (y - py) * (y - py);
                    const double e2 = sx * (x + px) * (x + px) + sy * (y + py) * (y + py);
                    f.at(i, j) = std::exp(-e1) + std::exp(-e2);
                }
            }
            return normalize(f);
        }
    }
    throw ConfigError("initial.kind: unknown kind");
}

}  // namespace ringdm
