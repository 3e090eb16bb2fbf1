#pragma once

#include <cstddef>

namespace bohmlab::specfun {

/// Evaluation policy for the Airy function.
///
/// Ai is computed from its Maclaurin series on the inner region and from the
/// standard asymptotic expansions outside it. `series_cutoff` is the abscissa
/// where the positive-x handoff happens; the oscillatory handoff on the
/// negative axis sits further out (see airy_ai notes in the implementation).
struct AiryEvalConfig {
    double series_cutoff = 5.0; // positive-x series/asymptotic handoff
    std::size_t max_terms = 300;
    double tol = 1e-6;          // guaranteed relative error for |x| <= 20

    void validate() const;
};

/// Airy function Ai(x).
///
/// Maclaurin series with compensated (double-double) accumulation for the
/// inner region, asymptotic expansions beyond, blended over a short window so
/// the function seen by finite-difference probes is C^2 across each handoff.
double airy_ai(double x, const AiryEvalConfig& cfg = {});

/// Physicists' Hermite polynomial H_n(y) by the ascending three-term
/// recurrence H_{n+1} = 2 y H_n - 2 n H_{n-1}.
double hermite(int n, double y);

/// Gamma function for positive argument, Lanczos approximation (g = 7, 9
/// coefficients, Godfrey's set). Relative error below 1e-13 on [0.1, 50].
double gamma_fn(double x);

namespace detail {
// Individual Ai branches, exposed so tests can probe handoff continuity.
double airy_ai_series(double x, const AiryEvalConfig& cfg);
double airy_ai_asymptotic_pos(double x, const AiryEvalConfig& cfg);
double airy_ai_asymptotic_neg(double x, const AiryEvalConfig& cfg);
// Abscissa of the oscillatory-side handoff (positive number; handoff at -x).
double airy_negative_cutoff();
} // namespace detail

} // namespace bohmlab::specfun
