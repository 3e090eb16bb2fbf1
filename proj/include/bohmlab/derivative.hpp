#pragma once

#include <vector>

#include "bohmlab/grid.hpp"

namespace bohmlab {

enum class Scheme {
    FiniteDifference, // central O(dx^2) interior, one-sided O(dx^2) at boundaries
    Spectral          // FFT-based; exact for band-limited fields, periodic grids only
};

/// First or second derivative of real samples on the grid.
/// Finite differences wrap around on periodic grids.
std::vector<double> derivative(const std::vector<double>& f, const Grid1D& grid,
                               int order, Scheme scheme);

namespace stencil {

// 4th-order centered stencils used by the residual operators, where the
// O(dx^2) truncation constants of the plain scheme would dominate the
// residual budget. Non-wrapping: the outer two points fall back to the
// one-sided O(dx^2) formulas (reports trim them).
std::vector<double> d1_o4(const std::vector<double>& f, double dx);
std::vector<double> d2_o4(const std::vector<double>& f, double dx);

} // namespace stencil

} // namespace bohmlab
