#include <doctest.h>

#include <cmath>

#include "ringdm/errors.hpp"
#include "ringdm/evolution.hpp"
#include "ringdm/oracles.hpp"

using namespace ringdm;

TEST_CASE("free width law: frozen values") {
    CHECK(free_width_squared(0.0, 1.3) == doctest::Approx(1.69));
    CHECK(free_width_squared(2.0, 1.0) == doctest::Approx(2.0));
    CHECK(free_width_squared(5.0, 1.0) == doctest::Approx(7.25));
    CHECK_THROWS_AS(free_width_squared(1.0, 0.0), ParameterError);
}

TEST_CASE("managed width ratio: circular degeneracy and exact ratio") {
    const ManagedWidths w0 = managed_width_ratio(0.0, 3.0, 1.0);
    CHECK(w0.wa_t_squared == doctest::Approx(free_width_squared(3.0, 1.0)));
    CHECK(w0.wb_t_squared == doctest::Approx(free_width_squared(3.0, 1.0)));

    for (double eps : {0.25, 0.5, 0.9}) {
        for (double t : {0.0, 1.0, 4.0}) {
            const ManagedWidths w = managed_width_ratio(eps, t, 1.2);
            CHECK(w.wa_t_squared / w.wb_t_squared ==
                  doctest::Approx(1.0 - eps * eps).epsilon(1e-14));
        }
    }
    CHECK_THROWS_AS(managed_width_ratio(1.0, 1.0, 1.0), ParameterError);
}

TEST_CASE("unmanaged width: frozen example") {
    // eps = 0.5, wa0 = 1, t = 2: (1 + 0.5625) / 0.75
    CHECK(unmanaged_width_b_squared(0.5, 2.0, 1.0) ==
          doctest::Approx((1.0 + 0.5625) / 0.75).epsilon(1e-14));
    CHECK(unmanaged_width_b_squared(0.5, 2.0, 1.0) == doctest::Approx(2.0833333333).epsilon(1e-9));
}

TEST_CASE("rescaled circular reference: identity at eps = 0") {
    auto grid = make_grid(64, 64, 0.3, 0.3);
    ComplexField2D f(grid);
    for (int i = 0; i < grid->nx; ++i)
        for (int j = 0; j < grid->ny; ++j)
            f.at(i, j) = Complex(std::sin(0.2 * i), std::cos(0.3 * j));
    auto mapped = rescaled_circular_reference(f, 0.0, grid);
    for (std::size_t k = 0; k < f.values.size(); ++k)
        CHECK(std::abs(mapped.values[k] - f.values[k]) < 1e-14);
}

TEST_CASE("rescaled circular reference: exact stretch on aligned grids") {
    const double eps = 0.6;
    const double sigma = 0.8;
    auto target = make_grid(64, 64, 0.3, 0.3);
    auto source = make_grid(64, 64, 0.3, 0.3 / sigma);

    // Smooth unit-norm Gaussian on the source grid.
    ComplexField2D src(source);
    for (int i = 0; i < source->nx; ++i)
        for (int j = 0; j < source->ny; ++j) {
            const double r2 = source->x[i] * source->x[i] + source->y[j] * source->y[j];
            src.at(i, j) = std::exp(-r2 / 8.0);
        }
    src = normalize(src);

    auto mapped = rescaled_circular_reference(src, eps, target);
    CHECK(std::abs(mapped.norm() - 1.0) < 1e-10);

    // Pointwise: mapped(x, y) = src(x, y/sigma)/sqrt(sigma); target nodes hit
    // source nodes exactly, so interpolation is exact there.
    for (int i = 0; i < target->nx; i += 5)
        for (int j = 0; j < target->ny; j += 5) {
            const Complex expect = src.at(i, j) / std::sqrt(sigma);
            CHECK(std::abs(mapped.at(i, j) - expect) < 1e-12);
        }
}

TEST_CASE("managed widths in the ring: packets keep the sigma ratio") {
    // g = 0 packets launched at the semi-major and semi-minor points of a
    // managed ring, transverse widths in ratio sigma; their azimuthal widths
    // keep the sigma ratio while they stay clear of each other.
    const double eps = 0.5;
    const double sigma = std::sqrt(1.0 - eps * eps);
    auto grid = make_grid(256, 256, 0.2, 0.2);
    WaveguideParams w{10.0, 1.0, 10.0, eps};
    auto V = elliptic_ring_potential(grid, w);

    const double da = channel_width(w), wa = 1.0;
    InitialStateParams pa;
    pa.kind = InitialStateKind::gaussian_packet;
    pa.center_x = 10.0;
    pa.width_x = da;       // transverse at (a, 0)
    pa.width_y = wa;       // azimuthal
    InitialStateParams pb;
    pb.kind = InitialStateKind::gaussian_packet;
    pb.center_y = w.semi_minor();
    pb.width_x = wa / sigma; // azimuthal at (0, b)
    pb.width_y = da * sigma; // transverse

    EvolutionConfig cfg;
    cfg.dt = 0.01;
    cfg.n_steps = 200;
    cfg.record_stride = 200;
    const DispersionPair dm{1.0, sigma * sigma};
    auto ra = evolve_with_schedule(make_initial_state(grid, pa), TrapSchedule::single(V, 1e9), dm,
                                   0.0, cfg);
    auto rb = evolve_with_schedule(make_initial_state(grid, pb), TrapSchedule::single(V, 1e9), dm,
                                   0.0, cfg);
    const double ratio = ra.series.width_y.back() / rb.series.width_x.back();
    CHECK(ratio == doctest::Approx(sigma).epsilon(0.05));
}

TEST_CASE("rescaled circular reference: out-of-range target raises") {
    const double eps = 0.9; // sigma = 0.436: y/sigma leaves the same-size grid
    auto grid = make_grid(64, 64, 0.3, 0.3);
    ComplexField2D f(grid);
    f.values[0] = 1.0;
    CHECK_THROWS_AS(rescaled_circular_reference(f, eps, grid), RangeError);
}
