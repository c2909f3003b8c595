#pragma once

#include "ringdm/field.hpp"

namespace ringdm {

/// Free Gaussian width law w_t^2 = w_0^2 + t^2/(4 w_0^2).
double free_width_squared(double t, double w0);

struct ManagedWidths {
    double wa_t_squared = 0.0; // along-ring width^2 at the semi-major point
    double wb_t_squared = 0.0; // along-ring width^2 at the semi-minor point
};

/// Managed-dispersion prediction: the widths keep their initial ratio,
///   wb^2 = [wa0^2 + t^2/(4 wa0^2)] / (1-eps^2),  wa^2 = (1-eps^2) wb^2.
ManagedWidths managed_width_ratio(double eccentricity, double t, double wa0);

/// Unmanaged counterpart, where the ratio drifts:
///   wb^2 = [wa0^2 + t^2 (1-eps^2)^2 / (4 wa0^2)] / (1-eps^2).
double unmanaged_width_b_squared(double eccentricity, double t, double wa0);

/// Maps a circular-waveguide field psi_c onto the grid of a dispersion-managed
/// elliptical run: psi(x, y) = psi_c(x, y/sigma)/sqrt(sigma), sigma =
/// sqrt(1-eps^2), bilinear interpolation off-grid. Throws RangeError when
/// y/sigma falls outside the source grid.
ComplexField2D rescaled_circular_reference(const ComplexField2D& circular, double eccentricity,
                                           const GridPtr& target_grid);

}  // namespace ringdm
