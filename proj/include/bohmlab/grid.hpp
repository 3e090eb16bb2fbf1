#pragma once

#include <cstddef>
#include <vector>

#include "bohmlab/errors.hpp"

namespace bohmlab {

/// Uniform 1-D grid. Periodic grids cover [x_min, x_max) with spacing
/// (x_max - x_min)/n; non-periodic grids include both endpoints with
/// spacing (x_max - x_min)/(n - 1).
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t n = 2;
    bool periodic = false;

    double dx() const {
        return periodic ? (x_max - x_min) / static_cast<double>(n)
                        : (x_max - x_min) / static_cast<double>(n - 1);
    }
    double length() const { return x_max - x_min; }
    double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx(); }

    std::vector<double> points() const {
        std::vector<double> xs(n);
        for (std::size_t i = 0; i < n; ++i) xs[i] = x(i);
        return xs;
    }

    bool contains(double xq) const {
        return xq >= x_min && xq <= (periodic ? x_max - dx() : x_max);
    }

    void validate() const {
        if (n < 2) throw ValidationError("Grid1D: n must be at least 2");
        if (!(x_max > x_min)) throw ValidationError("Grid1D: x_max must exceed x_min");
    }

    bool operator==(const Grid1D& o) const {
        return x_min == o.x_min && x_max == o.x_max && n == o.n && periodic == o.periodic;
    }
};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

} // namespace bohmlab
