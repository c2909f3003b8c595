#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ringdm/errors.hpp"
#include "ringdm/fft.hpp"
#include "ringdm/field.hpp"
#include "ringdm/grid.hpp"
#include "ringdm/units.hpp"

using namespace ringdm;

namespace {
const double pi = std::numbers::pi;

ComplexField2D random_field(const GridPtr& grid, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexField2D f(grid);
    for (auto& v : f.values) v = Complex(dist(rng), dist(rng));
    return f;
}
}  // namespace

TEST_CASE("grid: full-resolution preset spans [-25.6, 25.5]") {
    auto g = make_grid(512, 512, 0.1, 0.1);
    CHECK(g->x0 == doctest::Approx(-25.6));
    CHECK(g->x.front() == doctest::Approx(-25.6));
    CHECK(g->x.back() == doctest::Approx(25.5));
    CHECK(g->extent_x() == doctest::Approx(51.2));
    CHECK(g->x[256] == doctest::Approx(0.0));
}

TEST_CASE("grid: DFT wavenumber convention") {
    auto g4 = make_grid(4, 4, 1.0, 1.0);
    CHECK(g4->kx[0] == doctest::Approx(0.0));
    CHECK(g4->kx[1] == doctest::Approx(pi / 2));
    CHECK(g4->kx[2] == doctest::Approx(-pi));
    CHECK(g4->kx[3] == doctest::Approx(-pi / 2));

    auto g2 = make_grid(2, 2, 0.5, 0.5);
    CHECK(g2->kx[0] == doctest::Approx(0.0));
    CHECK(g2->kx[1] == doctest::Approx(-2 * pi));
}

TEST_CASE("grid: wavenumbers odd-symmetric under index reflection except Nyquist") {
    auto g = make_grid(16, 8, 0.3, 0.7);
    for (int i = 1; i < 16; ++i) {
        if (i == 8) continue;
        CHECK(g->kx[(16 - i) % 16] == doctest::Approx(-g->kx[i]));
    }
    for (int j = 1; j < 8; ++j) {
        if (j == 4) continue;
        CHECK(g->ky[(8 - j) % 8] == doctest::Approx(-g->ky[j]));
    }
}

TEST_CASE("grid: rejects bad shapes") {
    CHECK_THROWS_AS(make_grid(100, 128, 0.1, 0.1), ConfigError);
    CHECK_THROWS_AS(make_grid(128, 128, 0.0, 0.1), ConfigError);
    CHECK_THROWS_AS(make_grid(1, 128, 0.1, 0.1), ConfigError);
    CHECK_THROWS_AS(make_grid(128, 128, 0.1, -0.2), ConfigError);
}

TEST_CASE("coupling: reference sodium parameters give g near 42.06") {
    PhysicalParams p;
    p.atom_count = 1e4;
    p.scattering_length_m = 2.75e-9;
    p.a_perp_m = 2.318e-6;
    CHECK(coupling_from_params(p) == doctest::Approx(42.0556).epsilon(1e-4));
}

TEST_CASE("coupling: zero atoms and homogeneity") {
    PhysicalParams p;
    p.atom_count = 0.0;
    p.a_perp_m = 2.318e-6;
    CHECK(coupling_from_params(p) == 0.0);

    p.atom_count = 1e4;
    const double g0 = coupling_from_params(p);
    p.atom_count *= 3.0;
    CHECK(coupling_from_params(p) == doctest::Approx(3.0 * g0));
    p.atom_count = 1e4;
    p.scattering_length_m *= 2.0;
    CHECK(coupling_from_params(p) == doctest::Approx(2.0 * g0));
    p.scattering_length_m = 2.75e-9;
    p.a_perp_m *= 2.0;
    CHECK(coupling_from_params(p) == doctest::Approx(0.5 * g0));
}

TEST_CASE("coupling: derived oscillator length matches the stated one") {
    PhysicalParams p; // a_perp derived from m and omega
    CHECK(p.oscillator_length_m() == doctest::Approx(2.318e-6).epsilon(5e-3));
}

TEST_CASE("units: time and length conversions") {
    PhysicalParams p;
    CHECK(to_physical_time_ms(1.0, p) == doctest::Approx(1.953125));
    CHECK(to_physical_time_ms(0.0, p) == 0.0);
    p.a_perp_m = 2.318e-6;
    CHECK(to_physical_length_um(10.0, p) == doctest::Approx(23.18));
    CHECK(ms_per_time_unit_table() == doctest::Approx(1.0 / 1.95));
}

TEST_CASE("normalize: uniform field, idempotence, zero field") {
    auto grid = make_grid(32, 32, 0.5, 0.5);
    ComplexField2D f(grid);
    for (auto& v : f.values) v = Complex(3.0, 0.0);
    auto n = normalize(f);
    const double area = grid->extent_x() * grid->extent_y();
    CHECK(n.values[0].real() == doctest::Approx(1.0 / std::sqrt(area)));
    CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-13));

    auto n2 = normalize(n);
    for (std::size_t k = 0; k < n.values.size(); ++k)
        CHECK(std::abs(n2.values[k] - n.values[k]) < 1e-14);

    ComplexField2D zero(grid);
    CHECK_THROWS_AS(normalize(zero), DegenerateFieldError);
}

TEST_CASE("normalize: preserves direction") {
    auto grid = make_grid(16, 16, 0.5, 0.5);
    auto f = random_field(grid, 7);
    auto n = normalize(f);
    const double scale = f.norm();
    for (std::size_t k = 0; k < f.values.size(); ++k)
        CHECK(std::abs(n.values[k] * scale - f.values[k]) < 1e-12);
}

TEST_CASE("second_moment_width: isotropic Gaussian and translation invariance") {
    auto grid = make_grid(128, 128, 0.2, 0.2);
    ComplexField2D f(grid);
    for (int i = 0; i < grid->nx; ++i)
        for (int j = 0; j < grid->ny; ++j) {
            const double r2 = grid->x[i] * grid->x[i] + grid->y[j] * grid->y[j];
            f.at(i, j) = std::exp(-r2 / 2.0) / std::sqrt(pi);
        }
    CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(second_moment_width(f, Axis::x) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    CHECK(second_moment_width(f, Axis::y) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));

    ComplexField2D shifted(grid);
    for (int i = 0; i < grid->nx; ++i)
        for (int j = 0; j < grid->ny; ++j) {
            const double dx = grid->x[i] - 3.0;
            const double r2 = dx * dx + grid->y[j] * grid->y[j];
            shifted.at(i, j) = std::exp(-r2 / 2.0) / std::sqrt(pi);
        }
    CHECK(second_moment_width(shifted, Axis::x) ==
          doctest::Approx(second_moment_width(f, Axis::x)).epsilon(1e-9));
    CHECK(centroid(shifted, Axis::x) == doctest::Approx(3.0).epsilon(1e-9));

    ComplexField2D unnormalized(grid);
    for (auto& v : unnormalized.values) v = Complex(1.0, 0.0);
    CHECK_THROWS_AS(second_moment_width(unnormalized, Axis::x), ContractError);
}

TEST_CASE("fft: Parseval identity to 1e-12 relative") {
    auto grid = make_grid(64, 32, 0.17, 0.23);
    auto f = random_field(grid, 42);
    const double direct = f.norm_squared();

    SpectralTransform fft(*grid);
    auto spec = f.values;
    fft.forward(spec);
    double spectral = 0.0;
    for (const auto& v : spec) spectral += std::norm(v);
    spectral *= grid->cell_area() / static_cast<double>(grid->size());
    CHECK(spectral == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("fft: roundtrip is identity") {
    auto grid = make_grid(32, 64, 0.1, 0.1);
    auto f = random_field(grid, 3);
    auto work = f.values;
    SpectralTransform fft(*grid);
    fft.forward(work);
    fft.backward(work);
    for (std::size_t k = 0; k < work.size(); ++k)
        CHECK(std::abs(work[k] - f.values[k]) < 1e-13);
}

TEST_CASE("fft: plane wave lands on its wavenumber bin") {
    auto grid = make_grid(32, 32, 0.25, 0.25);
    ComplexField2D f(grid);
    const int mode_i = 5, mode_j = 3;
    for (int i = 0; i < grid->nx; ++i)
        for (int j = 0; j < grid->ny; ++j)
            f.at(i, j) = std::exp(Complex(0.0, grid->kx[mode_i] * grid->x[i] +
                                                   grid->ky[mode_j] * grid->y[j]));
    SpectralTransform fft(*grid);
    auto spec = f.values;
    fft.forward(spec);
    double peak = 0.0;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < spec.size(); ++k)
        if (std::abs(spec[k]) > peak) {
            peak = std::abs(spec[k]);
            arg = k;
        }
    CHECK(arg == grid->index(mode_i, mode_j));
    CHECK(peak == doctest::Approx(static_cast<double>(grid->size())));
}
