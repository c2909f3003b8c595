#include "ringdm/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ringdm/errors.hpp"

namespace ringdm {

double free_width_squared(double t, double w0) {
    if (!(w0 > 0.0)) throw ParameterError("free_width: w0 must be positive");
    return w0 * w0 + t * t / (4.0 * w0 * w0);
}

ManagedWidths managed_width_ratio(double eccentricity, double t, double wa0) {
    if (!(eccentricity >= 0.0 && eccentricity < 1.0))
        throw ParameterError("managed_width_ratio: eccentricity must lie in [0, 1)");
    const double s2 = 1.0 - eccentricity * eccentricity;
    ManagedWidths w;
    w.wb_t_squared = free_width_squared(t, wa0) / s2;
    w.wa_t_squared = s2 * w.wb_t_squared;
    return w;
}

double unmanaged_width_b_squared(double eccentricity, double t, double wa0) {
    if (!(eccentricity >= 0.0 && eccentricity < 1.0))
        throw ParameterError("unmanaged_width_b: eccentricity must lie in [0, 1)");
    if (!(wa0 > 0.0)) throw ParameterError("unmanaged_width_b: wa0 must be positive");
    const double s2 = 1.0 - eccentricity * eccentricity;
    return (wa0 * wa0 + t * t * s2 * s2 / (4.0 * wa0 * wa0)) / s2;
}

ComplexField2D rescaled_circular_reference(const ComplexField2D& circular, double eccentricity,
                                           const GridPtr& target_grid) {
    if (!(eccentricity >= 0.0 && eccentricity < 1.0))
        throw ParameterError("rescaled_circular_reference: eccentricity must lie in [0, 1)");
    const double sigma = std::sqrt(1.0 - eccentricity * eccentricity);
    const GridSpec& src = *circular.grid;
    const GridSpec& dst = *target_grid;
    const double jacobian = 1.0 / std::sqrt(sigma);

    // Rounding can push a fractional index a few ulp past the last node when
    // target and source grids are commensurate; allow that edge.
    const double slack = 1e-9;
    ComplexField2D out(target_grid);
    for (int i = 0; i < dst.nx; ++i) {
        const double x = dst.x[i];
        const double fx = (x - src.x0) / src.dx;
        if (fx < -slack || fx > src.nx - 1 + slack)
            throw RangeError("rescaled_circular_reference: x = " + std::to_string(x) +
                             " outside the source grid");
        const int ix = std::clamp(static_cast<int>(fx), 0, src.nx - 2);
        const double tx = fx - ix;
        for (int j = 0; j < dst.ny; ++j) {
            const double Y = dst.y[j] / sigma;
            const double fy = (Y - src.y0) / src.dy;
            if (fy < -slack || fy > src.ny - 1 + slack)
                throw RangeError("rescaled_circular_reference: y/sigma = " + std::to_string(Y) +
                                 " outside the source grid");
            const int iy = std::clamp(static_cast<int>(fy), 0, src.ny - 2);
            const double ty = fy - iy;
            const Complex v00 = circular.at(ix, iy);
            const Complex v10 = circular.at(ix + 1, iy);
            const Complex v01 = circular.at(ix, iy + 1);
            const Complex v11 = circular.at(ix + 1, iy + 1);
            out.at(i, j) = jacobian * ((1.0 - tx) * ((1.0 - ty) * v00 + ty * v01) +
                                       tx * ((1.0 - ty) * v10 + ty * v11));
        }
    }
    return out;
}

}  // namespace ringdm
