#include "ringdm/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ringdm/errors.hpp"

namespace ringdm {

namespace {

bool is_power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

}  // namespace

GridPtr make_grid(int nx, int ny, double dx, double dy) {
    if (!is_power_of_two(nx) || !is_power_of_two(ny))
        throw ConfigError("grid: nx and ny must be powers of two >= 2, got " + std::to_string(nx) +
                          "x" + std::to_string(ny));
    if (!(dx > 0.0) || !(dy > 0.0))
        throw ConfigError("grid: spacings must be positive");

    auto g = std::make_shared<GridSpec>();
    g->nx = nx;
    g->ny = ny;
    g->dx = dx;
    g->dy = dy;
    g->x0 = -0.5 * nx * dx;
    g->y0 = -0.5 * ny * dy;

    g->x.resize(nx);
    g->y.resize(ny);
    g->kx.resize(nx);
    g->ky.resize(ny);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int i = 0; i < nx; ++i) {
        g->x[i] = g->x0 + i * dx;
        const int s = (i < nx / 2) ? i : i - nx;
        g->kx[i] = two_pi * s / (nx * dx);
    }
    for (int j = 0; j < ny; ++j) {
        g->y[j] = g->y0 + j * dy;
        const int s = (j < ny / 2) ? j : j - ny;
        g->ky[j] = two_pi * s / (ny * dy);
    }
    return g;
}

}  // namespace ringdm
