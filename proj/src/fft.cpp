#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace bohmlab::fft {

namespace {

// FFTW's planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void transform(std::vector<std::complex<double>>& data, int sign) {
    const std::size_t n = data.size();
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
}

} // namespace

void forward(std::vector<std::complex<double>>& data) { transform(data, FFTW_FORWARD); }

void inverse(std::vector<std::complex<double>>& data) {
    transform(data, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(data.size());
    for (auto& v : data) v *= scale;
}

std::vector<double> wavenumbers(const Grid1D& grid) {
    const std::size_t n = grid.n;
    const double dk = 2.0 * 3.14159265358979323846 / grid.length();
    std::vector<double> k(n);
    for (std::size_t i = 0; i <= n / 2; ++i) k[i] = dk * static_cast<double>(i);
    for (std::size_t i = n / 2 + 1; i < n; ++i)
        k[i] = -dk * static_cast<double>(n - i);
    return k;
}

Plan::Plan(std::size_t n) : n_(n) {
    buf_ = fftw_malloc(sizeof(fftw_complex) * n);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_1d(static_cast<int>(n), static_cast<fftw_complex*>(buf_),
                            static_cast<fftw_complex*>(buf_), FFTW_FORWARD, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_1d(static_cast<int>(n), static_cast<fftw_complex*>(buf_),
                            static_cast<fftw_complex*>(buf_), FFTW_BACKWARD, FFTW_ESTIMATE);
}

Plan::~Plan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(inv_));
    fftw_free(buf_);
}

std::complex<double>* Plan::data() { return reinterpret_cast<std::complex<double>*>(buf_); }

void Plan::forward() { fftw_execute(static_cast<fftw_plan>(fwd_)); }

void Plan::inverse() {
    fftw_execute(static_cast<fftw_plan>(inv_));
    auto* d = data();
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] *= scale;
}

} // namespace bohmlab::fft
