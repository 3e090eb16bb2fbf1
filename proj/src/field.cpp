#include "bohmlab/field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "bohmlab/errors.hpp"

namespace bohmlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Wrap to (-pi, pi].
inline double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * kPi);
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

} // namespace

PolarField polar_decompose(const ComplexField& psi, const PhysicalParams& params,
                           AmplitudeMode mode, double node_threshold_rel) {
    const std::size_t n = psi.values.size();
    if (n != psi.grid.n) throw UsageError("polar_decompose: value count does not match grid");

    double max_abs = 0.0;
    for (const auto& v : psi.values) max_abs = std::max(max_abs, std::abs(v));
    if (max_abs == 0.0) throw DegenerateFieldError("polar_decompose: field is identically zero");
    const double threshold = node_threshold_rel * max_abs;

    PolarField out;
    out.grid = psi.grid;
    out.mode = mode;
    out.time = psi.time;
    out.amplitude.assign(n, 0.0);
    out.phase.assign(n, 0.0);

    std::size_t first = 0;
    while (first < n && std::abs(psi.values[first]) < threshold) ++first;

    // Anchor at the leftmost valid point.
    double sign = 1.0;
    double phi = std::arg(psi.values[first]);
    if (mode == AmplitudeMode::Signed && std::abs(phi) > kPi / 2.0) {
        sign = -1.0;
        phi = wrap_angle(phi - kPi);
    }

    const double hbar = params.hbar;
    out.amplitude[first] = sign * std::abs(psi.values[first]);
    out.phase[first] = hbar * phi;
    for (std::size_t i = 0; i < first; ++i) { // leading sub-threshold zone
        out.amplitude[i] = sign * std::abs(psi.values[i]);
        out.phase[i] = hbar * phi;
    }

    for (std::size_t i = first + 1; i < n; ++i) {
        const double mag = std::abs(psi.values[i]);
        if (mag < threshold) { // hold the continuation state through nodes
            out.amplitude[i] = sign * mag;
            out.phase[i] = hbar * phi;
            continue;
        }
        double d = wrap_angle(std::arg(sign * psi.values[i]) - phi);
        if (mode == AmplitudeMode::Signed && std::abs(d) > kPi / 2.0) {
            sign = -sign;
            d = wrap_angle(d - kPi);
        }
        phi += d;
        out.amplitude[i] = sign * mag;
        out.phase[i] = hbar * phi;
    }
    if (mode == AmplitudeMode::NonNegative)
        for (auto& a : out.amplitude) a = std::abs(a);
    return out;
}

ComplexField recompose(const PolarField& polar, const PhysicalParams& params) {
    const std::size_t n = polar.grid.n;
    if (polar.amplitude.size() != n || polar.phase.size() != n)
        throw UsageError("recompose: sample counts do not match grid");
    ComplexField out;
    out.grid = polar.grid;
    out.time = polar.time;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.values[i] = std::polar(1.0, polar.phase[i] / params.hbar) * polar.amplitude[i];
    return out;
}

double norm(const ComplexField& psi) {
    const std::size_t n = psi.values.size();
    if (n == 0) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double w = 1.0;
        if (!psi.grid.periodic && (i == 0 || i == n - 1)) w = 0.5;
        acc += w * std::norm(psi.values[i]);
    }
    return std::sqrt(acc * psi.grid.dx());
}

std::vector<bool> node_mask(const std::vector<double>& amplitude, const Grid1D& grid,
                            double threshold_rel, double exclusion_radius) {
    const std::size_t n = amplitude.size();
    std::vector<bool> mask(n, false);
    double max_abs = 0.0;
    for (double a : amplitude) max_abs = std::max(max_abs, std::abs(a));
    if (max_abs == 0.0) {
        mask.assign(n, true);
        return mask;
    }
    const double threshold = threshold_rel * max_abs;

    std::vector<double> nodes;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(amplitude[i]) < threshold) {
            mask[i] = true;
            nodes.push_back(grid.x(i));
        }
    }
    // Sign changes of a signed amplitude locate nodes between samples.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (amplitude[i] * amplitude[i + 1] < 0.0) {
            double a0 = amplitude[i], a1 = amplitude[i + 1];
            nodes.push_back(grid.x(i) + grid.dx() * a0 / (a0 - a1));
        }
    }
    if (exclusion_radius > 0.0) {
        const double dx = grid.dx();
        for (double xz : nodes) {
            auto lo = static_cast<long>(std::ceil((xz - exclusion_radius - grid.x_min) / dx));
            auto hi = static_cast<long>(std::floor((xz + exclusion_radius - grid.x_min) / dx));
            for (long j = std::max(lo, 0L); j <= std::min(hi, static_cast<long>(n) - 1); ++j)
                mask[static_cast<std::size_t>(j)] = true;
        }
    }
    return mask;
}

} // namespace bohmlab
