#include <doctest.h>

#include <cmath>
#include <random>

#include "bohmlab/bohm.hpp"
#include "bohmlab/errors.hpp"
#include "bohmlab/family.hpp"
#include "oracles.hpp"

using namespace bohmlab;
using namespace bohmlab::family;

namespace {

FFamily constant_family(double a, double b, double c = 0.0) {
    return {TimeFn({a}), TimeFn({b}), TimeFn({c}), TimeFn({0.0})};
}

} // namespace

TEST_CASE("f_eval reproduces the cubic form and its derivatives") {
    // a = 1, b = 0, c = 0 at x = 2: f = 8/3, f' = 4
    auto fam = constant_family(1.0, 0.0);
    auto j = f_eval(fam, 2.0, 0.37);
    CHECK(j.f == doctest::Approx(8.0 / 3.0));
    CHECK(j.fx == doctest::Approx(4.0));
    CHECK(j.ft == 0.0);
    CHECK(j.ftt == 0.0);

    // a = 0, b = 1: f = x + c, f' = 1 (uniform density)
    auto uniform = constant_family(0.0, 1.0, 2.5);
    auto ju = f_eval(uniform, 3.0, 0.0);
    CHECK(ju.f == doctest::Approx(3.0 + 2.5));
    CHECK(ju.fx == doctest::Approx(1.0));

    // a(t) = t: f = t^2 x^3/3 -> df/dt = 2 t x^3/3 = 2/3 at x = t = 1
    FFamily time_dep{TimeFn({0.0, 1.0}), TimeFn({0.0}), TimeFn({0.0}), TimeFn({0.0})};
    CHECK(f_eval(time_dep, 1.0, 1.0).ft == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("TimeFn derivatives are consistent with the coefficients") {
    TimeFn p({1.0, -2.0, 3.0, 0.5}); // 1 - 2t + 3t^2 + t^3/2
    const double t = 0.8;
    CHECK(p.value(t) == doctest::Approx(1.0 - 2.0 * t + 3.0 * t * t + 0.5 * t * t * t));
    CHECK(p.deriv(t) == doctest::Approx(-2.0 + 6.0 * t + 1.5 * t * t));
    CHECK(p.deriv2(t) == doctest::Approx(6.0 + 3.0 * t));
}

TEST_CASE("A = |x| member has zero Bohm potential away from the node") {
    PhysicalParams p;
    Grid1D g{-2.0, 2.0, 401, false};
    auto fam = constant_family(1.0, 0.0);
    auto field = family_to_fields(fam, g, 0.0, p);
    for (std::size_t i = 0; i < g.n; ++i)
        CHECK(field.amplitude[i] == doctest::Approx(std::abs(g.x(i))));
    BohmOptions opts;
    opts.node_exclusion_radius = 0.05;
    auto vb = bohm_potential(field, p, opts);
    CHECK(vb.max_abs_unmasked() < 1e-10);
}

TEST_CASE("uniform member is stationary") {
    PhysicalParams p;
    Grid1D g{-2.0, 2.0, 401, false};
    auto field = family_to_fields(constant_family(0.0, 1.0), g, 0.0, p);
    for (std::size_t i = 0; i < g.n; i += 19) {
        CHECK(field.amplitude[i] == doctest::Approx(1.0));
        CHECK(field.phase[i] == doctest::Approx(0.0));
    }
}

TEST_CASE("time-dependent member satisfies the continuity equation") {
    // b(t) = t with a = 1; evaluated where the density zero x* = -t sits
    // outside the window.
    PhysicalParams p;
    Grid1D g{-2.0, 2.0, 801, false};
    FFamily fam{TimeFn({1.0}), TimeFn({0.0, 1.0}), TimeFn({0.0}), TimeFn({0.0})};
    const double t = 10.0, dt = 5e-6;
    auto rep = continuity_residual(
        oracles::slices3([&](double tt) { return family_to_fields(fam, g, tt, p); }, t,
                         dt),
        p);
    CHECK(rep.l_inf < 1e-8);
}

TEST_CASE("static members reconstruct a free particle") {
    PhysicalParams p;
    Grid1D g{-2.0, 2.0, 401, false};
    auto fam = constant_family(0.7, 1.9, -0.3);
    auto v = external_potential_from_f(fam, g, 0.0, p);
    auto f = force_from_f(fam, g, 0.0, p);
    for (std::size_t i = 0; i < g.n; ++i) {
        CHECK(std::abs(v[i]) < 1e-12);
        CHECK(std::abs(f[i]) < 1e-12);
    }
}

TEST_CASE("short-window oscillator member reproduces a quadratic potential") {
    // b(t) ~ (cos w t)^{-1/2} = 1 + (w t)^2/4 + 7 (w t)^4/96 + ... solves the
    // flow for V = m w^2 x^2 / 2; the Taylor window is exact at t = 0 and
    // O(t^4)-accurate nearby.
    PhysicalParams p;
    const double omega = 1.3;
    const double w2 = omega * omega;
    Grid1D g{-1.0, 1.0, 201, false};
    FFamily fam{TimeFn({0.0}), TimeFn({1.0, 0.0, w2 / 4.0, 0.0, 7.0 * w2 * w2 / 96.0}),
                TimeFn({0.0}), TimeFn({0.0})};
    for (double t : {0.0, 0.01}) {
        auto v = external_potential_from_f(fam, g, t, p);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.n; ++i) {
            const double x = g.x(i);
            worst = std::max(worst,
                             std::abs((v[i] - v[100]) - 0.5 * omega * omega * x * x));
        }
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("mu acts as a pure gauge: uniform V shift, no force") {
    PhysicalParams p;
    Grid1D g{-2.0, 2.0, 401, false};
    const double energy = 1.7;
    FFamily plain{TimeFn({0.3, 0.1}), TimeFn({1.5, -0.2}), TimeFn({0.4}), TimeFn({0.0})};
    FFamily gauged = plain;
    gauged.mu = TimeFn({0.0, energy}); // mu = E t

    const double t = 0.05;
    auto v0 = external_potential_from_f(plain, g, t, p);
    auto v1 = external_potential_from_f(gauged, g, t, p);
    for (std::size_t i = 0; i < g.n; i += 13)
        CHECK(v1[i] - v0[i] == doctest::Approx(-energy).epsilon(1e-12));

    auto f0 = force_from_f(plain, g, t, p);
    auto f1 = force_from_f(gauged, g, t, p);
    for (std::size_t i = 0; i < g.n; i += 13)
        CHECK(f1[i] == doctest::Approx(f0[i]).epsilon(1e-13));
}

TEST_CASE("force equals minus the potential gradient") {
    PhysicalParams p;
    Grid1D g{-2.0, 2.0, 801, false};
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        auto fam = random_family(rng);
        const double t = 0.02;
        auto v = external_potential_from_f(fam, g, t, p);
        auto f = force_from_f(fam, g, t, p);
        auto vx = stencil::d1_o4(v, g.dx());
        for (std::size_t i = 4; i + 4 < g.n; ++i)
            CHECK(std::abs(f[i] + vx[i]) < 1e-6);
    }
}

TEST_CASE("random family members satisfy every vanishing-V_B property") {
    PhysicalParams p;
    Grid1D g{-2.0, 2.0, 801, false};
    std::mt19937_64 rng(2024);
    const double t = 0.03, dt = 5e-6;
    ResidualOptions ropts;
    ropts.node_exclusion_radius = 0.05;
    for (int trial = 0; trial < 5; ++trial) {
        auto fam = random_family(rng);
        auto verdict = vb_zero_check(fam, g, t, p, 1e-8);
        CHECK(verdict.vanishing);
        CHECK(verdict.max_abs_vb < 1e-8);

        auto slices = oracles::slices3(
            [&](double tt) { return family_to_fields(fam, g, tt, p); }, t, dt);
        CHECK(continuity_residual(slices, p, ropts).l_inf < 1e-8);
        auto v = external_potential_from_f(fam, g, t, p);
        CHECK(qhj_residual(slices, v, p, ropts).l_inf < 1e-6);
    }
}

TEST_CASE("vb_zero_check separates squares of linear functions from the rest") {
    PhysicalParams p;
    Grid1D g{-3.0, 3.0, 601, false};

    // f' = (2x + 3)^2: vanishing
    std::vector<double> square(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        const double u = 2.0 * g.x(i) + 3.0;
        square[i] = u * u;
    }
    auto verdict = vb_zero_check(square, g, p);
    CHECK(verdict.vanishing);

    // f' = Gaussian: A = exp(-x^2/2) has V_B = (1 - x^2)/2, decidedly nonzero
    std::vector<double> gaussian(g.n);
    for (std::size_t i = 0; i < g.n; ++i) gaussian[i] = std::exp(-g.x(i) * g.x(i));
    auto verdict2 = vb_zero_check(gaussian, g, p);
    CHECK_FALSE(verdict2.vanishing);
    CHECK(verdict2.max_abs_vb > 0.1);

    // negative density is rejected
    std::vector<double> negative(g.n, -1.0);
    CHECK_THROWS_AS(vb_zero_check(negative, g, p), InvalidFamilyError);
}

TEST_CASE("family error paths") {
    PhysicalParams p;
    // grid must contain the x = 0 anchor
    Grid1D off{1.0, 3.0, 101, false};
    CHECK_THROWS_AS(family_to_fields(constant_family(0.0, 1.0), off, 0.0, p),
                    UsageError);

    // a and b both zero at the evaluation time
    Grid1D g{-2.0, 2.0, 201, false};
    CHECK_THROWS_AS(family_to_fields(constant_family(0.0, 0.0), g, 0.0, p),
                    InvalidFamilyError);

    // time-dependent member whose density zero lies on the integration path
    FFamily singular{TimeFn({1.0}), TimeFn({0.0, 1.0}), TimeFn({0.0}), TimeFn({0.0})};
    // at t = 1 the zero sits at x = -1, inside [-2, 2]
    bool threw = false;
    try {
        family_to_fields(singular, g, 1.0, p);
    } catch (const SingularIntegralError& e) {
        threw = true;
        CHECK(e.location == doctest::Approx(-1.0).epsilon(0.05));
    }
    CHECK(threw);
    CHECK_THROWS_AS(external_potential_from_f(singular, g, 1.0, p),
                    SingularIntegralError);
}
