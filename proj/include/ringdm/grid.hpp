#pragma once

#include <memory>
#include <vector>

namespace ringdm {

/// Uniform, centered 2D grid together with its conjugate spectral grid.
///
/// Coordinates are x[i] = x0 + i*dx with x0 = -nx*dx/2 (likewise y), so
/// x = 0 is always a grid point on the even-sized grids we enforce.
/// Wavenumbers follow the signed DFT convention kx[i] = 2*pi*s(i)/(nx*dx),
/// s(i) = i for i < nx/2 and i - nx otherwise.
struct GridSpec {
    int nx = 0;
    int ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    double x0 = 0.0;
    double y0 = 0.0;
    std::vector<double> x, y;    // coordinates, units of a_perp
    std::vector<double> kx, ky;  // wavenumbers, units of 1/a_perp

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * ny + j; }
    double cell_area() const { return dx * dy; }
    double extent_x() const { return nx * dx; }
    double extent_y() const { return ny * dy; }

    bool same_as(const GridSpec& o) const {
        return nx == o.nx && ny == o.ny && dx == o.dx && dy == o.dy && x0 == o.x0 && y0 == o.y0;
    }
};

using GridPtr = std::shared_ptr<const GridSpec>;

/// Builds a centered grid. nx, ny must be powers of two (>= 2), spacings positive.
GridPtr make_grid(int nx, int ny, double dx, double dy);

}  // namespace ringdm
