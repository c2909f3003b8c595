#include "ringdm/observables.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <numeric>
#include <string>

#include "ringdm/errors.hpp"
#include "ringdm/fft.hpp"

namespace ringdm {

Complex autocorrelation(const ComplexField2D& f0, const ComplexField2D& ft) {
    require_same_grid(*f0.grid, *ft.grid, "autocorrelation");
    Complex a(0.0, 0.0);
    for (std::size_t k = 0; k < f0.values.size(); ++k)
        a += std::conj(f0.values[k]) * ft.values[k];
    return a * f0.grid->cell_area();
}

double survival(const ComplexField2D& f0, const ComplexField2D& ft) {
    return std::norm(autocorrelation(f0, ft));
}

double overlap_lambda(const ComplexField2D& expected, const ComplexField2D& actual) {
    require_same_grid(*expected.grid, *actual.grid, "overlap_lambda");
    double cross = 0.0, ee = 0.0, aa = 0.0;
    for (std::size_t k = 0; k < expected.values.size(); ++k) {
        const double ne = std::norm(expected.values[k]);
        const double na = std::norm(actual.values[k]);
        cross += ne * na;
        ee += ne * ne;
        aa += na * na;
    }
    if (!(ee > 0.0) || !(aa > 0.0))
        throw DegenerateFieldError("overlap_lambda: zero field");
    return (cross * cross) / (ee * aa);
}

ComplexField2D expected_uniform_state(const GridPtr& grid, const WaveguideParams& w) {
    return ring_ansatz_state(grid, w);
}

CrossSection cross_section_density(const ComplexField2D& f, Axis axis) {
    const GridSpec& g = *f.grid;
    CrossSection cs;
    if (axis == Axis::x) {
        const int j0 = g.ny / 2; // y = 0 exactly on centered even grids
        cs.coordinate = g.x;
        cs.density.resize(g.nx);
        for (int i = 0; i < g.nx; ++i) cs.density[i] = std::norm(f.at(i, j0));
    } else {
        const int i0 = g.nx / 2;
        cs.coordinate = g.y;
        cs.density.resize(g.ny);
        for (int j = 0; j < g.ny; ++j) cs.density[j] = std::norm(f.at(i0, j));
    }
    return cs;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double ellipse_circumference(double semi_major, double eccentricity) {
    if (!(semi_major > 0.0)) throw ParameterError("circumference: semi_major must be positive");
    if (!(eccentricity >= 0.0 && eccentricity < 1.0))
        throw ParameterError("circumference: eccentricity must lie in [0, 1)");
    const double m = eccentricity * eccentricity;
    auto integrand = [m](double phi) {
        const double s = std::sin(phi);
        return std::sqrt(1.0 - m * s * s);
    };
    // One quadrant by symmetry; tolerance scaled to hit ~1e-12 relative.
    const double quarter = integrate(integrand, 0.0, 0.5 * std::numbers::pi, 1e-14);
    return 4.0 * semi_major * quarter;
}

double revival_time_predict(double circumference) {
    if (!(circumference > 0.0)) throw ParameterError("revival: circumference must be positive");
    return circumference * circumference / (4.0 * std::numbers::pi);
}

std::vector<double> fr_times(double revival_time, const std::vector<FRFraction>& fractions) {
    std::vector<double> out;
    out.reserve(fractions.size());
    for (FRFraction f : fractions) {
        if (f.p <= 0 || f.q <= 0 || f.p > f.q)
            throw ParameterError("fr_times: fractions must satisfy 0 < p/q <= 1");
        const int g = std::gcd(f.p, f.q);
        if (g != 1)
            std::cerr << "[ringdm] warning: reducing non-coprime fraction " << f.p << "/" << f.q
                      << "\n";
        out.push_back(revival_time * static_cast<double>(f.p / g) / static_cast<double>(f.q / g));
    }
    return out;
}

double measure_revival_time(const TimeSeries& ts, double window_lo, double window_hi) {
    if (ts.times.size() != ts.survival.size() || ts.times.empty())
        throw DetectionError("measure_revival_time: empty or inconsistent series");
    std::size_t best = ts.times.size(), first = ts.times.size(), last = 0;
    double best_s = -1.0;
    for (std::size_t k = 0; k < ts.times.size(); ++k) {
        const double t = ts.times[k];
        if (t < window_lo || t > window_hi) continue;
        if (first == ts.times.size()) first = k;
        last = k;
        if (ts.survival[k] > best_s) {
            best_s = ts.survival[k];
            best = k;
        }
    }
    if (best == ts.times.size())
        throw DetectionError("measure_revival_time: window [" + std::to_string(window_lo) + ", " +
                             std::to_string(window_hi) + "] contains no samples");
    // A real peak must be interior; a maximum on the window edge means the
    // series is monotone there, not revived.
    if (best == first || best == last)
        throw DetectionError("measure_revival_time: no interior maximum in window [" +
                             std::to_string(window_lo) + ", " + std::to_string(window_hi) + "]");
    // Quadratic refinement through the three samples around the maximum.
    const double s0 = ts.survival[best - 1], s1 = ts.survival[best], s2 = ts.survival[best + 1];
    const double denom = s0 - 2.0 * s1 + s2;
    if (denom >= -1e-300) return ts.times[best]; // flat top
    const double shift = 0.5 * (s0 - s2) / denom;
    const double h = 0.5 * (ts.times[best + 1] - ts.times[best - 1]);
    return ts.times[best] + std::clamp(shift, -1.0, 1.0) * h;
}

std::vector<double> angular_density(const ComplexField2D& f, const WaveguideParams& w, int bins) {
    if (bins < 4) throw ParameterError("angular_density: need at least 4 bins");
    const GridSpec& g = *f.grid;
    const double a = w.semi_major;
    const double b = w.semi_minor();
    const double band = 4.0 * w.gamma; // annulus half-width around the ring
    std::vector<double> rho(bins, 0.0);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int i = 0; i < g.nx; ++i) {
        const double x = g.x[i];
        for (int j = 0; j < g.ny; ++j) {
            const double y = g.y[j];
            const double r_ell = elliptic_radius(x, y, w.eccentricity);
            if (std::abs(r_ell - a) > band) continue;
            // Elliptical angle: x = r a cos(phi), y = r b sin(phi).
            double phi = std::atan2(y / b, x / a);
            if (phi < 0.0) phi += two_pi;
            int bin = static_cast<int>(phi / two_pi * bins);
            if (bin >= bins) bin = bins - 1;
            rho[bin] += std::norm(f.values[g.index(i, j)]);
        }
    }
    return rho;
}

int count_fr_lobes(const ComplexField2D& f, const WaveguideParams& w, double threshold,
                   int bins) {
    std::vector<double> raw = angular_density(f, w, bins);
    // Bins can be narrower than the grid's angular resolution near the
    // semi-major ends; a short circular moving average removes the resulting
    // empty-bin notches without blurring lobes (tens of bins wide).
    const int half = std::max(1, bins / 128);
    std::vector<double> rho(bins, 0.0);
    for (int k = 0; k < bins; ++k) {
        double s = 0.0;
        for (int d = -half; d <= half; ++d) s += raw[(k + d + bins) % bins];
        rho[k] = s / (2 * half + 1);
    }
    const double peak = *std::max_element(rho.begin(), rho.end());
    if (!(peak > 0.0)) return 0;
    const double cut = threshold * peak;
    // Count connected above-threshold arcs with circular adjacency; each
    // well-separated lobe contributes exactly one arc.
    std::vector<char> above(bins);
    int n_above = 0;
    for (int k = 0; k < bins; ++k) {
        above[k] = rho[k] >= cut;
        n_above += above[k];
    }
    if (n_above == 0) return 0;
    if (n_above == bins) return 1;
    int arcs = 0;
    for (int k = 0; k < bins; ++k) {
        const int prev = (k + bins - 1) % bins;
        if (above[k] && !above[prev]) ++arcs;
    }
    return arcs;
}

namespace {

struct SpectralPeak {
    double k = 0.0;
    double magnitude = 0.0;
};

// Largest strict local maximum of the Hann-windowed profile spectrum at
// k >= k_min. The Hann window tames leakage from non-bin-centered fringes;
// Grandke's two-bin ratio then recovers the fractional bin near-exactly for
// a windowed tone.
SpectralPeak dominant_frequency(const std::vector<double>& profile, double spacing, double k_min) {
    const int n = static_cast<int>(profile.size());
    double mean = 0.0;
    for (double v : profile) mean += v;
    mean /= n;
    std::vector<Complex> buf(n);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int i = 0; i < n; ++i) {
        const double hann = 0.5 * (1.0 - std::cos(two_pi * i / n));
        buf[i] = Complex((profile[i] - mean) * hann, 0.0);
    }
    fft_1d_forward(buf);
    std::vector<double> mag(n / 2 + 1);
    for (int k = 0; k <= n / 2; ++k) mag[k] = std::abs(buf[k]);

    const double dk = two_pi / (n * spacing);
    int best = -1;
    for (int k = 2; k < n / 2; ++k) {
        if (k * dk < k_min) continue;
        if (mag[k] > mag[k - 1] && mag[k] >= mag[k + 1]) {
            if (best < 0 || mag[k] > mag[best]) best = k;
        }
    }
    if (best < 0 || !(mag[best] > 0.0))
        throw DetectionError("fringe_periods: no spectral peak above k_min");

    // Fractional bin toward the larger neighbor.
    double shift = 0.0;
    if (mag[best + 1] >= mag[best - 1]) {
        const double alpha = mag[best + 1] / mag[best];
        shift = (2.0 * alpha - 1.0) / (alpha + 1.0);
    } else {
        const double alpha = mag[best - 1] / mag[best];
        shift = -(2.0 * alpha - 1.0) / (alpha + 1.0);
    }
    return {(best + std::clamp(shift, -0.5, 0.5)) * dk, mag[best]};
}

}  // namespace

FringePeriods fringe_periods(const RealField2D& density_field, double k_min) {
    const GridSpec& g = *density_field.grid;
    const int j0 = g.ny / 2;
    const int i0 = g.nx / 2;
    std::vector<double> row(g.nx), col(g.ny);
    for (int i = 0; i < g.nx; ++i) row[i] = density_field.at(i, j0);
    for (int j = 0; j < g.ny; ++j) col[j] = density_field.at(i0, j);

    const SpectralPeak px = dominant_frequency(row, g.dx, k_min);
    const SpectralPeak py = dominant_frequency(col, g.dy, k_min);
    FringePeriods out;
    out.wavenumber_x = px.k;
    out.wavenumber_y = py.k;
    out.period_x = 2.0 * std::numbers::pi / px.k;
    out.period_y = 2.0 * std::numbers::pi / py.k;
    return out;
}

BetaSweepResult beta_sweep(const GridPtr& grid, const WaveguideParams& w, double g,
                           const BetaSweepConfig& cfg) {
    w.validate();
    const double s2 = 1.0 - w.eccentricity * w.eccentricity;
    double lo = cfg.beta_min, hi = cfg.beta_max;
    if (!(lo > 0.0) || !(hi > lo)) {
        lo = std::max(0.05, s2 - 0.15);
        hi = s2 + 0.15;
    }
    if (cfg.coarse_points < 3) throw ConfigError("sweep: need at least 3 points");

    const RealField2D V = elliptic_ring_potential(grid, w);
    const ComplexField2D expected = expected_uniform_state(grid, w);
    ComplexField2D seed = expected; // warm start chain

    struct Sample {
        double beta, lambda;
        ComplexField2D state;
    };
    std::vector<Sample> samples;

    auto run_at = [&](double beta) {
        DispersionPair disp{1.0, beta};
        GroundStateResult gs = ground_state_itp(V, disp, g, cfg.itp, seed);
        seed = gs.state;
        samples.push_back({beta, overlap_lambda(expected, gs.state), std::move(gs.state)});
    };

    for (int k = 0; k < cfg.coarse_points; ++k)
        run_at(lo + (hi - lo) * k / (cfg.coarse_points - 1));

    auto best_it = std::max_element(samples.begin(), samples.end(),
                                    [](const Sample& a, const Sample& b) {
                                        return a.lambda < b.lambda;
                                    });
    const double coarse_step = (hi - lo) / (cfg.coarse_points - 1);
    const double b_best = best_it->beta;
    seed = best_it->state;
    for (int k = 0; k < cfg.refine_points; ++k) {
        const double beta =
            b_best - coarse_step + 2.0 * coarse_step * (k + 1) / (cfg.refine_points + 1);
        if (beta <= 0.0) continue;
        run_at(beta);
    }

    std::sort(samples.begin(), samples.end(),
              [](const Sample& a, const Sample& b) { return a.beta < b.beta; });
    BetaSweepResult res;
    res.eccentricity = w.eccentricity;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        res.beta.push_back(samples[k].beta);
        res.lambda.push_back(samples[k].lambda);
        if (samples[k].lambda > samples[arg].lambda) arg = k;
    }
    res.beta_c = samples[arg].beta;
    res.state_at_best = std::move(samples[arg].state);
    return res;
}

}  // namespace ringdm
