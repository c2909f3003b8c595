#pragma once

#include <complex>
#include <vector>

#include "ringdm/grid.hpp"

namespace ringdm {

/// In-place 2D complex FFT bound to one grid shape.
///
/// Plans are created with FFTW_ESTIMATE so planning is deterministic (no
/// timing-dependent algorithm choice) and the transforms are bitwise
/// reproducible run to run. One instance per worker; instances must not be
/// shared across threads mid-transform.
class SpectralTransform {
public:
    explicit SpectralTransform(const GridSpec& grid);
    ~SpectralTransform();

    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;

    /// Unnormalized forward DFT, in place.
    void forward(std::vector<std::complex<double>>& values) const;
    /// Inverse DFT including the 1/(nx*ny) factor, in place.
    void backward(std::vector<std::complex<double>>& values) const;

    int nx() const { return nx_; }
    int ny() const { return ny_; }

private:
    int nx_, ny_;
    double inv_n_;
    void* plan_fwd_;
    void* plan_bwd_;
};

/// In-place 1D complex FFT for profile analysis (unnormalized forward).
void fft_1d_forward(std::vector<std::complex<double>>& values);

}  // namespace ringdm
