#include "ringdm/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "ringdm/errors.hpp"

namespace ringdm {

namespace {
// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

SpectralTransform::SpectralTransform(const GridSpec& grid)
    : nx_(grid.nx), ny_(grid.ny), inv_n_(1.0 / (static_cast<double>(grid.nx) * grid.ny)) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    // Planned unaligned so the plans can execute on any std::vector storage.
    // First (slow) dimension is nx to match the row-major i*ny + j layout.
    fftw_complex* dummy = fftw_alloc_complex(grid.size());
    plan_fwd_ = fftw_plan_dft_2d(nx_, ny_, dummy, dummy, FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_bwd_ = fftw_plan_dft_2d(nx_, ny_, dummy, dummy, FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(dummy);
    if (!plan_fwd_ || !plan_bwd_) throw NumericalError("fft: plan creation failed");
}

SpectralTransform::~SpectralTransform() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void SpectralTransform::forward(std::vector<std::complex<double>>& values) const {
    auto* p = reinterpret_cast<fftw_complex*>(values.data());
    fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), p, p);
}

void SpectralTransform::backward(std::vector<std::complex<double>>& values) const {
    auto* p = reinterpret_cast<fftw_complex*>(values.data());
    fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), p, p);
    for (auto& v : values) v *= inv_n_;
}

void fft_1d_forward(std::vector<std::complex<double>>& values) {
    std::unique_lock<std::mutex> lock(planner_mutex());
    auto* p = reinterpret_cast<fftw_complex*>(values.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(values.size()), p, p, FFTW_FORWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    lock.unlock();
    fftw_execute(plan);
    lock.lock();
    fftw_destroy_plan(plan);
}

}  // namespace ringdm
