#pragma once

#include <vector>

#include "bohmlab/derivative.hpp"
#include "bohmlab/field.hpp"
#include "bohmlab/grid.hpp"
#include "bohmlab/params.hpp"

namespace bohmlab {

/// Bohm potential samples V_B = -(hbar^2/2m) A''/A with node points masked.
struct BohmPotentialField {
    Grid1D grid;
    std::vector<double> values; // 0 at masked points
    std::vector<bool> mask;     // true = excluded
    double time = 0.0;

    std::size_t masked_count() const;
    double max_abs_unmasked() const;
};

struct BohmOptions {
    Scheme scheme = Scheme::FiniteDifference;
    double node_threshold_rel = kNodeThresholdRel;
    double node_exclusion_radius = 0.0;
};

/// Eq. V_B = -(hbar^2/2m) A''/A, A'' by the field derivative operator.
/// Throws DegenerateFieldError when every point ends up masked.
BohmPotentialField bohm_potential(const PolarField& polar, const PhysicalParams& params,
                                  const BohmOptions& opts = {});

/// Aggregate residual of one of the Madelung equations over unmasked points.
struct ResidualReport {
    double l_inf = 0.0;
    double l2 = 0.0; // rms over unmasked points
    double masked_fraction = 0.0;
    Grid1D grid;
    double time = 0.0;
    std::vector<double> field; // residual samples, 0 where masked
    std::vector<bool> mask;
};

struct ResidualOptions {
    double node_threshold_rel = kNodeThresholdRel;
    double node_exclusion_radius = 0.0;
    // Outermost points of a non-periodic grid are masked from the report:
    // they use lower-order one-sided stencils, and the continuity residual
    // differentiates twice, so contamination reaches two stencil widths in.
    std::size_t boundary_trim = 4;
};

/// Residual of the quantum Hamilton-Jacobi equation,
///   (S')^2/2m + V_B + V + dS/dt,
/// evaluated at the middle slice of an odd, uniformly spaced time series.
ResidualReport qhj_residual(const std::vector<PolarField>& slices,
                            const std::vector<double>& potential,
                            const PhysicalParams& params,
                            const ResidualOptions& opts = {});

/// Residual of the continuity equation, (A^2 S')'/m + d(A^2)/dt.
ResidualReport continuity_residual(const std::vector<PolarField>& slices,
                                   const PhysicalParams& params,
                                   const ResidualOptions& opts = {});

/// Force -V_B' and acceleration -V_B'/m from a (possibly masked) Bohm
/// potential field. Derivatives run inside contiguous unmasked regions.
struct ForceField {
    Grid1D grid;
    std::vector<double> force;
    std::vector<double> acceleration;
    std::vector<bool> mask;
};
ForceField bohm_force_and_acceleration(const BohmPotentialField& vb,
                                       const PhysicalParams& params);

/// Bohmian trajectory: integral curve of dx/dt = S'(x,t)/m.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> positions;
    std::vector<double> velocities;
    bool truncated = false; // left the grid before the series ended
};

/// RK4 through the velocity field of a uniform PolarField time series,
/// S' interpolated linearly in x and t. A trajectory that exits the grid is
/// returned truncated and flagged.
Trajectory integrate_trajectory(const std::vector<PolarField>& s_fields, double x0,
                                const PhysicalParams& params);

} // namespace bohmlab
