#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "bohmlab/grid.hpp"

namespace bohmlab::fft {

/// In-place forward DFT (unnormalized, e^{-ikx} convention).
void forward(std::vector<std::complex<double>>& data);

/// In-place inverse DFT, including the 1/n normalization.
void inverse(std::vector<std::complex<double>>& data);

/// Angular wavenumbers in FFT ordering: (2*pi/L) * {0, 1, ..., n/2, -(n/2-1), ..., -1}.
std::vector<double> wavenumbers(const Grid1D& grid);

/// Reusable plan pair for repeated transforms of one size (the propagator's
/// inner loop). Owns aligned buffers; callers copy through data().
class Plan {
public:
    explicit Plan(std::size_t n);
    ~Plan();
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    std::complex<double>* data();
    void forward();  // unnormalized
    void inverse();  // includes 1/n
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    void* buf_;
    void* fwd_;
    void* inv_;
};

} // namespace bohmlab::fft
