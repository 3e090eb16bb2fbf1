#pragma once

#include <complex>
#include <vector>

#include "bohmlab/grid.hpp"
#include "bohmlab/params.hpp"

namespace bohmlab {

/// Relative amplitude level below which a point counts as a node: the phase
/// (and later A''/A) is undefined there and gets masked, not extrapolated.
inline constexpr double kNodeThresholdRel = 1e-8;

enum class AmplitudeMode {
    NonNegative, // A = |psi|; pi jumps at sign changes stay in the phase
    Signed       // sign changes of a real wavefunction are absorbed into A
};

/// Sampled complex wavefunction at one time instant.
struct ComplexField {
    Grid1D grid;
    std::vector<std::complex<double>> values;
    double time = 0.0;
};

/// Madelung representation: psi = A exp(i S / hbar), A and S real.
/// `phase` carries S in action units (hbar times the angle).
struct PolarField {
    Grid1D grid;
    std::vector<double> amplitude;
    std::vector<double> phase;
    AmplitudeMode mode = AmplitudeMode::NonNegative;
    double time = 0.0;
};

/// Polar decomposition with cumulative left-to-right phase unwrapping.
/// The leftmost above-threshold point anchors S in (-pi*hbar, pi*hbar]
/// (signed mode: (-pi*hbar/2, pi*hbar/2], the sign of A absorbing the rest).
/// Throws DegenerateFieldError when the field is identically zero.
PolarField polar_decompose(const ComplexField& psi, const PhysicalParams& params,
                           AmplitudeMode mode = AmplitudeMode::NonNegative,
                           double node_threshold_rel = kNodeThresholdRel);

/// Pointwise A exp(i S / hbar).
ComplexField recompose(const PolarField& polar, const PhysicalParams& params);

/// sqrt(sum |psi|^2 dx); trapezoid end-weights on non-periodic grids.
double norm(const ComplexField& psi);

/// Mask of node points: true where |A| < threshold_rel * max|A|, optionally
/// widened to everything within `exclusion_radius` of such a point (and of
/// sign changes of a signed amplitude).
std::vector<bool> node_mask(const std::vector<double>& amplitude, const Grid1D& grid,
                            double threshold_rel = kNodeThresholdRel,
                            double exclusion_radius = 0.0);

} // namespace bohmlab
