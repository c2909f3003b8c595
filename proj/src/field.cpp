#include "ringdm/field.hpp"

#include <cmath>

#include "ringdm/errors.hpp"

namespace ringdm {

double ComplexField2D::norm_squared() const {
    double s = 0.0;
    for (const Complex& v : values) s += std::norm(v);
    return s * grid->cell_area();
}

double ComplexField2D::norm() const { return std::sqrt(norm_squared()); }

bool ComplexField2D::finite() const {
    for (const Complex& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

RealField2D density(const ComplexField2D& f) {
    RealField2D n(f.grid);
    for (std::size_t k = 0; k < f.values.size(); ++k) n.values[k] = std::norm(f.values[k]);
    return n;
}

ComplexField2D normalize(const ComplexField2D& f) {
    const double n = f.norm();
    if (!(n > 0.0)) throw DegenerateFieldError("normalize: field has zero norm");
    ComplexField2D out = f;
    const double inv = 1.0 / n;
    for (Complex& v : out.values) v *= inv;
    return out;
}

namespace {

void require_unit_norm(const ComplexField2D& f, const char* what) {
    const double n2 = f.norm_squared();
    if (std::abs(n2 - 1.0) > 1e-6)
        throw ContractError(std::string(what) + ": field is not unit-norm (norm^2 = " +
                            std::to_string(n2) + ")");
}

}  // namespace

double centroid(const ComplexField2D& f, Axis axis) {
    require_unit_norm(f, "centroid");
    const GridSpec& g = *f.grid;
    double mean = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double q = (axis == Axis::x) ? g.x[i] : g.y[j];
            mean += q * std::norm(f.values[g.index(i, j)]);
        }
    return mean * g.cell_area();
}

double second_moment_width(const ComplexField2D& f, Axis axis) {
    require_unit_norm(f, "second_moment_width");
    const GridSpec& g = *f.grid;
    double mean = 0.0, mean2 = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double q = (axis == Axis::x) ? g.x[i] : g.y[j];
            const double n = std::norm(f.values[g.index(i, j)]);
            mean += q * n;
            mean2 += q * q * n;
        }
    mean *= g.cell_area();
    mean2 *= g.cell_area();
    const double var = mean2 - mean * mean;
    return std::sqrt(std::max(var, 0.0));
}

}  // namespace ringdm
