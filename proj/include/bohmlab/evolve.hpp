#pragma once

#include <array>
#include <functional>
#include <vector>

#include "bohmlab/field.hpp"
#include "bohmlab/params.hpp"

namespace bohmlab::evolve {

/// Sampler for the external potential; null means free evolution.
using PotentialFn = std::function<double(double x, double t)>;

PotentialFn static_potential(std::vector<double> samples, const Grid1D& grid);

/// Strang split-step configuration. Snapshots are recorded at step 0 and
/// every `record_every` steps thereafter (the final step always included).
struct PropagatorConfig {
    double dt = 1e-3;
    std::size_t steps = 1;
    std::size_t record_every = 1;
    PotentialFn potential; // V(x, t)

    void validate() const;
};

/// Spectral split-step evolution of the free/potential Schroedinger pair:
/// exp(-iV dt/2hbar) . exp(+i hbar d_xx dt/2m) . exp(-iV dt/2hbar) per step,
/// kinetic part applied in Fourier space. Requires a periodic grid with a
/// power-of-two point count. Norm is preserved to roundoff.
/// Throws DivergenceError (with step index) when a NaN shows up mid-run.
std::vector<ComplexField> evolve(const ComplexField& psi0, const PropagatorConfig& cfg,
                                 const PhysicalParams& params);

struct Observables {
    double t = 0.0;
    double norm = 0.0;
    double energy = 0.0; // spectral kinetic + potential quadrature
    double x_peak = 0.0; // parabolic interpolation of log|psi|^2 around the max
    double x_mean = 0.0;
};

std::vector<Observables> observables(const std::vector<ComplexField>& series,
                                     const PotentialFn& potential,
                                     const PhysicalParams& params);

/// Smooth cosine taper over the outer `fraction` of the box at each end;
/// reconciles non-normalizable initial data (ideal Airy beam) with the
/// periodic boundaries.
ComplexField cosine_taper(const ComplexField& psi, double fraction = 0.1);

/// Least-squares quadratic fit x(t) ~ c0 + c1 t + c2 t^2; returns {c0, c1, c2}.
std::array<double, 3> fit_quadratic(const std::vector<double>& t,
                                    const std::vector<double>& x);

} // namespace bohmlab::evolve
