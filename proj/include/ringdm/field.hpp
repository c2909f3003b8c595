#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ringdm/errors.hpp"
#include "ringdm/grid.hpp"

namespace ringdm {

using Complex = std::complex<double>;

/// Real scalar field sampled on a grid, row-major (index = i*ny + j).
struct RealField2D {
    GridPtr grid;
    std::vector<double> values;

    RealField2D() = default;
    explicit RealField2D(GridPtr g) : grid(std::move(g)), values(grid->size(), 0.0) {}

    double& at(int i, int j) { return values[grid->index(i, j)]; }
    double at(int i, int j) const { return values[grid->index(i, j)]; }
};

/// Complex wavefunction sampled on a grid, row-major.
struct ComplexField2D {
    GridPtr grid;
    std::vector<Complex> values;

    ComplexField2D() = default;
    explicit ComplexField2D(GridPtr g) : grid(std::move(g)), values(grid->size(), Complex(0.0, 0.0)) {}

    Complex& at(int i, int j) { return values[grid->index(i, j)]; }
    Complex at(int i, int j) const { return values[grid->index(i, j)]; }

    /// sqrt( sum |psi|^2 dx dy )
    double norm() const;
    double norm_squared() const;
    bool finite() const;
};

/// |psi|^2 as a real field.
RealField2D density(const ComplexField2D& f);

/// Returns a unit-norm copy; throws DegenerateFieldError on a zero field.
ComplexField2D normalize(const ComplexField2D& f);

enum class Axis { x, y };

/// Density-weighted sqrt(<(q - <q>)^2>) along one axis. Requires unit norm
/// (within 1e-6); throws ContractError otherwise.
double second_moment_width(const ComplexField2D& f, Axis axis);

/// Density-weighted mean coordinate along one axis (same precondition).
double centroid(const ComplexField2D& f, Axis axis);

inline void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
    if (!a.same_as(b)) throw ContractError(std::string(what) + ": fields live on different grids");
}

}  // namespace ringdm
