#pragma once

#include <random>
#include <vector>

#include "bohmlab/field.hpp"
#include "bohmlab/grid.hpp"
#include "bohmlab/params.hpp"

namespace bohmlab::family {

/// Polynomial in t with analytic first and second derivatives.
class TimeFn {
public:
    TimeFn() : coeffs_{0.0} {}
    explicit TimeFn(std::vector<double> coeffs);

    double value(double t) const;
    double deriv(double t) const;
    double deriv2(double t) const;
    const std::vector<double>& coeffs() const { return coeffs_; }

private:
    std::vector<double> coeffs_; // ascending powers of t
};

/// Coefficient functions of the vanishing-Bohm-potential family:
///   f(x,t) = a^2 x^3/3 + a b x^2 + b^2 x + c,   f' = (a x + b)^2,
/// plus the free gauge function mu(t) entering the external potential.
struct FFamily {
    TimeFn a, b, c, mu;

    /// Density zero x* = -b/a at time t (infinity when a(t) = 0).
    double node_position(double t) const;
};

/// f and its partial derivatives at (x, t), all analytic in the coefficients.
struct FJet {
    double f;   // f
    double fx;  // df/dx = (a x + b)^2
    double ft;  // df/dt
    double ftx; // d2f/dtdx
    double ftt; // d2f/dt2
    double fxx; // d2f/dx2 (needed for the force)
};
FJet f_eval(const FFamily& fam, double x, double t);

/// Madelung fields of the family member: A = sqrt(f') = |a x + b|,
/// S' = -m ft/f' integrated from x = 0 with S(0,t) = mu(t).
/// The grid must contain x = 0. Throws SingularIntegralError when the
/// integration path crosses the density zero of a time-dependent member.
PolarField family_to_fields(const FFamily& fam, const Grid1D& grid, double t,
                            const PhysicalParams& params);

/// External potential V = -( m ft^2/(2 f'^2) + m I(x) + mu_dot ) with
/// I(x) = int_0^x ( ft ft'/f'^2 - ftt/f' ) dxt.
std::vector<double> external_potential_from_f(const FFamily& fam, const Grid1D& grid,
                                              double t, const PhysicalParams& params);

/// Force F = ( m ft^2/(2 f'^2) )' + m ( ft ft'/f'^2 - ftt/f' ), fully analytic.
std::vector<double> force_from_f(const FFamily& fam, const Grid1D& grid, double t,
                                 const PhysicalParams& params);

struct VbZeroVerdict {
    bool vanishing = false;
    double max_abs_vb = 0.0;
    double masked_fraction = 0.0;
};

/// Checks whether a density f' >= 0 produces a vanishing Bohm potential:
/// A = sqrt(f'), V_B computed numerically, verdict against `tol`.
VbZeroVerdict vb_zero_check(const std::vector<double>& f_prime_samples, const Grid1D& grid,
                            const PhysicalParams& params, double tol = 1e-6,
                            double node_exclusion_radius = 0.05);
VbZeroVerdict vb_zero_check(const FFamily& fam, const Grid1D& grid, double t,
                            const PhysicalParams& params, double tol = 1e-6,
                            double node_exclusion_radius = 0.05);

/// Random family with polynomial degree <= 3 whose density zero stays at
/// least `node_clearance` away from the origin for |t| <= t_extent
/// (rejection sampling; deterministic for a given engine state).
FFamily random_family(std::mt19937_64& rng, double node_clearance = 8.0,
                      double t_extent = 0.1);

} // namespace bohmlab::family
