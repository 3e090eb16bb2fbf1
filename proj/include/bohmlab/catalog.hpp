#pragma once

#include <string>
#include <vector>

#include "bohmlab/bohm.hpp"
#include "bohmlab/field.hpp"
#include "bohmlab/grid.hpp"
#include "bohmlab/params.hpp"

namespace bohmlab::catalog {

/// A closed-form solution together with the external potential it solves.
struct CatalogEntry {
    PolarField field;
    std::vector<double> potential; // V(x) samples on field.grid
};

/// Harmonic-oscillator eigenstate n:
///   A_n = (2^n n!)^{-1/2} (m w / pi hbar)^{1/4} e^{-m w x^2 / 2 hbar} H_n(sqrt(m w/hbar) x),
///   S_n = -(n + 1/2) hbar w t,  V = m w^2 x^2 / 2.
/// Signed amplitude; needs params extra "omega".
CatalogEntry ho_eigenstate(int n, const Grid1D& grid, double t, const PhysicalParams& params);

/// Berry-Balazs accelerating Airy packet (free particle, V = 0):
///   A = Ai((beta/hbar^{2/3})(x - beta^3 t^2 / 4 m^2)),
///   S = (beta^3 t / 2m)(x - beta^3 t^2 / 6 m^2).
/// Signed amplitude; needs params extra "beta" (nonzero).
CatalogEntry airy_solution(const Grid1D& grid, double t, const PhysicalParams& params);

/// Its Bohm potential in closed form:
///   V_B = -(beta^3/2m)(x - beta^3 t^2 / 4 m^2); nothing is masked.
BohmPotentialField airy_bohm_closed_form(const Grid1D& grid, double t,
                                         const PhysicalParams& params);

/// Plane wave A exp(i k x - i w t): A constant, S = hbar(k x - w t), V = 0.
/// The grid must be periodic with k commensurate; needs extras "k", "omega".
CatalogEntry plane_wave(const Grid1D& grid, double t, const PhysicalParams& params);

/// Unit-normalized Gaussian packet at t = 0 with envelope exp(-(x-x0)^2/(4 sigma^2))
/// and carrier exp(i k0 x). Extras "sigma" (> 0), optional "k0", "x0".
/// Appends to *warnings when sigma is under 3 dx (under-resolved).
ComplexField gaussian_packet(const Grid1D& grid, const PhysicalParams& params,
                             std::vector<std::string>* warnings = nullptr);

/// Morse-potential ground state, V = D (1 - e^{-alpha x})^2.
/// With lambda = sqrt(2 m D)/(alpha hbar) and z = 2 lambda e^{-alpha x}:
///   A_0 = sqrt(alpha / Gamma(2 lambda - 1)) z^{lambda - 1/2} e^{-z/2},
///   S = -E_0 t,  E_0 = D - (hbar^2 alpha^2 / 2m)(lambda - 1/2)^2.
/// Extras "morse_d" (> 0), "morse_alpha" (> 0); requires lambda > 1.
CatalogEntry morse_ground(const Grid1D& grid, double t, const PhysicalParams& params);

/// Ground-state Morse energy E_0 (used by tests and scenario checks).
double morse_ground_energy(const PhysicalParams& params);

enum class SolutionKind { PlaneWave, Gaussian, HoEigenstate, Airy, MorseGround };

/// Named catalog member, addressable from the CLI:
///   "airy" | "ho:n" | "plane:k,omega" | "gauss:sigma,k0" | "morse:D,alpha"
struct AnalyticSolution {
    SolutionKind kind;
    PhysicalParams params; // base constants plus kind-specific extras
    int n = 0;             // HO quantum number

    /// Field + potential at time t (Gaussian only defined at t = 0).
    CatalogEntry realize(const Grid1D& grid, double t) const;
};

AnalyticSolution parse_solution(const std::string& name, const PhysicalParams& base);

} // namespace bohmlab::catalog
