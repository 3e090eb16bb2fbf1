#include "bohmlab/derivative.hpp"

#include <complex>

#include "bohmlab/errors.hpp"
#include "fft.hpp"

namespace bohmlab {

namespace {

std::vector<double> fd_first(const std::vector<double>& f, const Grid1D& g) {
    const std::size_t n = f.size();
    const double h = g.dx();
    std::vector<double> d(n);
    if (g.periodic) {
        for (std::size_t i = 0; i < n; ++i)
            d[i] = (f[(i + 1) % n] - f[(i + n - 1) % n]) / (2.0 * h);
        return d;
    }
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
}

std::vector<double> fd_second(const std::vector<double>& f, const Grid1D& g) {
    const std::size_t n = f.size();
    const double h2 = g.dx() * g.dx();
    std::vector<double> d(n);
    if (g.periodic) {
        for (std::size_t i = 0; i < n; ++i)
            d[i] = (f[(i + 1) % n] - 2.0 * f[i] + f[(i + n - 1) % n]) / h2;
        return d;
    }
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
    d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    return d;
}

std::vector<double> spectral(const std::vector<double>& f, const Grid1D& g, int order) {
    std::vector<std::complex<double>> work(f.begin(), f.end());
    fft::forward(work);
    const auto k = fft::wavenumbers(g);
    const std::size_t n = f.size();
    if (order == 1) {
        for (std::size_t i = 0; i < n; ++i)
            work[i] *= std::complex<double>(0.0, k[i]);
        if (n % 2 == 0) work[n / 2] = 0.0; // odd derivative: drop the Nyquist mode
    } else {
        for (std::size_t i = 0; i < n; ++i) work[i] *= -k[i] * k[i];
    }
    fft::inverse(work);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = work[i].real();
    return out;
}

} // namespace

std::vector<double> derivative(const std::vector<double>& f, const Grid1D& grid,
                               int order, Scheme scheme) {
    if (order != 1 && order != 2)
        throw UsageError("derivative: order must be 1 or 2");
    if (f.size() != grid.n)
        throw UsageError("derivative: sample count does not match grid");
    if (f.size() < 4)
        throw UsageError("derivative: need at least 4 samples");
    if (scheme == Scheme::Spectral) {
        if (!grid.periodic)
            throw UsageError("derivative: spectral scheme requires a periodic grid");
        return spectral(f, grid, order);
    }
    return order == 1 ? fd_first(f, grid) : fd_second(f, grid);
}

namespace stencil {

std::vector<double> d1_o4(const std::vector<double>& f, double dx) {
    const std::size_t n = f.size();
    std::vector<double> d(n);
    if (n < 5) throw UsageError("d1_o4: need at least 5 samples");
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
    d[1] = (f[2] - f[0]) / (2.0 * dx);
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * dx);
    d[n - 2] = (f[n - 1] - f[n - 3]) / (2.0 * dx);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
    return d;
}

std::vector<double> d2_o4(const std::vector<double>& f, double dx) {
    const std::size_t n = f.size();
    std::vector<double> d(n);
    if (n < 5) throw UsageError("d2_o4: need at least 5 samples");
    const double h2 = dx * dx;
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    d[1] = (f[2] - 2.0 * f[1] + f[0]) / h2;
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = (-f[i + 2] + 16.0 * f[i + 1] - 30.0 * f[i] + 16.0 * f[i - 1] - f[i - 2]) /
               (12.0 * h2);
    d[n - 2] = (f[n - 1] - 2.0 * f[n - 2] + f[n - 3]) / h2;
    d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    return d;
}

} // namespace stencil

} // namespace bohmlab
