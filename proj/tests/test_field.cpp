#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>

#include "bohmlab/derivative.hpp"
#include "bohmlab/errors.hpp"
#include "bohmlab/field.hpp"
#include "bohmlab/io.hpp"
#include "oracles.hpp"

using namespace bohmlab;

namespace {
constexpr double kPi = 3.14159265358979323846;

ComplexField sample_complex(const Grid1D& g,
                            const std::function<std::complex<double>(double)>& fn,
                            double t = 0.0) {
    ComplexField f;
    f.grid = g;
    f.time = t;
    f.values.resize(g.n);
    for (std::size_t i = 0; i < g.n; ++i) f.values[i] = fn(g.x(i));
    return f;
}
} // namespace

TEST_CASE("grid spacing conventions") {
    Grid1D periodic{0.0, 10.0, 100, true};
    CHECK(periodic.dx() == doctest::Approx(0.1));
    CHECK(periodic.x(99) == doctest::Approx(9.9));
    Grid1D open{0.0, 10.0, 101, false};
    CHECK(open.dx() == doctest::Approx(0.1));
    CHECK(open.x(100) == doctest::Approx(10.0));
}

TEST_CASE("polar decomposition of a plane wave unwraps to a linear phase") {
    PhysicalParams p;
    Grid1D g{0.0, 20.0 * kPi, 2048, true}; // ten full 2*pi wraps
    const double k = 1.0;
    auto psi = sample_complex(g, [&](double x) { return std::polar(1.0, k * x); });
    auto polar = polar_decompose(psi, p);

    for (std::size_t i = 0; i < g.n; i += 97)
        CHECK(polar.amplitude[i] == doctest::Approx(1.0).epsilon(1e-14));
    // anchor within (-pi*hbar, pi*hbar]
    CHECK(polar.phase.front() > -kPi * p.hbar);
    CHECK(polar.phase.front() <= kPi * p.hbar);
    // globally linear: deviation from the best-fit line under 1e-9
    std::vector<double> xs = g.points();
    auto [b, a] = oracles::fit_line(xs, polar.phase);
    CHECK(a == doctest::Approx(p.hbar * k).epsilon(1e-12));
    double dev = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        dev = std::max(dev, std::abs(polar.phase[i] - (b + a * xs[i])));
    CHECK(dev < 1e-9);
}

TEST_CASE("polar decomposition of a real Gaussian has zero phase") {
    PhysicalParams p;
    Grid1D g{-5.0, 5.0, 501, false};
    auto psi = sample_complex(g, [](double x) {
        return std::complex<double>(std::exp(-x * x), 0.0);
    });
    auto polar = polar_decompose(psi, p);
    for (std::size_t i = 0; i < g.n; i += 13) {
        CHECK(polar.amplitude[i] == doctest::Approx(std::exp(-g.x(i) * g.x(i))));
        CHECK(polar.phase[i] == doctest::Approx(0.0));
    }
}

TEST_CASE("signed decomposition keeps sign changes in the amplitude") {
    PhysicalParams p;
    Grid1D g{-8.0, 2.0, 801, false};
    // Airy-like oscillating real field; compare against the raw real parts.
    auto shape = [](double x) { return std::sin(2.0 * x) * std::exp(-0.05 * x * x); };
    auto psi = sample_complex(g, [&](double x) {
        return std::complex<double>(shape(x), 0.0);
    });
    auto polar = polar_decompose(psi, p, AmplitudeMode::Signed);
    double max_abs = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        max_abs = std::max(max_abs, std::abs(shape(g.x(i))));
    for (std::size_t i = 0; i < g.n; ++i) {
        if (std::abs(shape(g.x(i))) < 1e-8 * max_abs) continue; // node vicinity
        CHECK(polar.amplitude[i] == doctest::Approx(shape(g.x(i))).epsilon(1e-12));
        CHECK(std::abs(polar.phase[i]) < 1e-12);
    }
}

TEST_CASE("recompose inverts polar_decompose away from nodes") {
    PhysicalParams p;
    p.hbar = 0.7; // exercise a non-unit hbar
    Grid1D g{-10.0, 10.0, 512, true};
    for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
        auto psi = oracles::random_band_limited(g, seed);
        double max_abs = 0.0;
        for (const auto& v : psi.values) max_abs = std::max(max_abs, std::abs(v));
        for (auto mode : {AmplitudeMode::NonNegative, AmplitudeMode::Signed}) {
            auto back = recompose(polar_decompose(psi, p, mode), p);
            for (std::size_t i = 0; i < g.n; ++i) {
                if (std::abs(psi.values[i]) <= 1e-8 * max_abs) continue;
                CHECK(std::abs(back.values[i] - psi.values[i]) <= 1e-12 * max_abs);
            }
        }
    }
}

TEST_CASE("recompose basics") {
    PhysicalParams p;
    Grid1D g{-5.0, 5.0, 101, false};
    PolarField polar;
    polar.grid = g;
    polar.amplitude.assign(g.n, 1.0);
    polar.phase.assign(g.n, 0.0);
    auto psi = recompose(polar, p);
    for (auto& v : psi.values) CHECK(v == std::complex<double>(1.0, 0.0));

    // A = Gaussian, S = hbar k x  ->  Gaussian times carrier
    const double k = 2.0;
    for (std::size_t i = 0; i < g.n; ++i) {
        polar.amplitude[i] = std::exp(-g.x(i) * g.x(i));
        polar.phase[i] = p.hbar * k * g.x(i);
    }
    psi = recompose(polar, p);
    for (std::size_t i = 0; i < g.n; i += 17) {
        auto expect = std::exp(-g.x(i) * g.x(i)) * std::polar(1.0, k * g.x(i));
        CHECK(std::abs(psi.values[i] - expect) < 1e-14);
    }
}

TEST_CASE("degenerate fields are rejected") {
    PhysicalParams p;
    Grid1D g{0.0, 1.0, 16, false};
    ComplexField zero;
    zero.grid = g;
    zero.values.assign(g.n, {0.0, 0.0});
    CHECK_THROWS_AS(polar_decompose(zero, p), DegenerateFieldError);
}

TEST_CASE("norm uses trapezoid weights and is homogeneous") {
    PhysicalParams p;
    Grid1D g{-12.0, 12.0, 1201, false};
    // (2 pi sigma^2)^{-1/4} exp(-x^2/(4 sigma^2)) has unit L2 norm
    const double sigma = 1.3;
    auto psi = sample_complex(g, [&](double x) {
        return std::complex<double>(
            std::pow(2.0 * kPi * sigma * sigma, -0.25) *
                std::exp(-x * x / (4.0 * sigma * sigma)),
            0.0);
    });
    CHECK(norm(psi) == doctest::Approx(1.0).epsilon(1e-10));

    auto doubled = psi;
    for (auto& v : doubled.values) v *= 2.0;
    CHECK(norm(doubled) == doctest::Approx(2.0 * norm(psi)).epsilon(1e-14));

    ComplexField zero;
    zero.grid = g;
    zero.values.assign(g.n, {0.0, 0.0});
    CHECK(norm(zero) == 0.0);
}

TEST_CASE("spectral derivative is exact for band-limited fields") {
    Grid1D g{0.0, 2.0 * kPi, 128, true};
    std::vector<double> f(g.n), expect(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        f[i] = std::sin(g.x(i));
        expect[i] = std::cos(g.x(i));
    }
    auto d = derivative(f, g, 1, Scheme::Spectral);
    for (std::size_t i = 0; i < g.n; ++i)
        CHECK(std::abs(d[i] - expect[i]) < 1e-10);
    auto d2 = derivative(f, g, 2, Scheme::Spectral);
    for (std::size_t i = 0; i < g.n; ++i)
        CHECK(std::abs(d2[i] + f[i]) < 1e-10);
}

TEST_CASE("finite differences are exact for quadratics, O(dx^2) otherwise") {
    Grid1D g{-2.0, 2.0, 401, false};
    std::vector<double> f(g.n);
    for (std::size_t i = 0; i < g.n; ++i) f[i] = g.x(i) * g.x(i);
    auto d2 = derivative(f, g, 2, Scheme::FiniteDifference);
    for (std::size_t i = 1; i + 1 < g.n; ++i)
        CHECK(d2[i] == doctest::Approx(2.0).epsilon(1e-8));

    // Convergence oracle: error of the second derivative of exp(-x^2)
    // against the analytic (4x^2 - 2) exp(-x^2) shrinks x4 when dx halves.
    auto err_at = [](std::size_t n) {
        Grid1D gg{-2.0, 2.0, n, false};
        std::vector<double> ff(gg.n);
        for (std::size_t i = 0; i < gg.n; ++i)
            ff[i] = std::exp(-gg.x(i) * gg.x(i));
        auto dd = derivative(ff, gg, 2, Scheme::FiniteDifference);
        double e = 0.0;
        for (std::size_t i = 1; i + 1 < gg.n; ++i) {
            double x = gg.x(i);
            double exact = (4.0 * x * x - 2.0) * std::exp(-x * x);
            e = std::max(e, std::abs(dd[i] - exact));
        }
        return e;
    };
    const double e1 = err_at(201), e2 = err_at(401);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
}

TEST_CASE("derivative usage errors") {
    Grid1D g{-1.0, 1.0, 64, false};
    std::vector<double> f(g.n, 0.0);
    CHECK_THROWS_AS(derivative(f, g, 3, Scheme::FiniteDifference), UsageError);
    CHECK_THROWS_AS(derivative(f, g, 1, Scheme::Spectral), UsageError);
    CHECK_THROWS_AS(derivative(std::vector<double>(10, 0.0), g, 1,
                               Scheme::FiniteDifference),
                    UsageError);
}

TEST_CASE("node_mask flags sub-threshold points and exclusion radii") {
    Grid1D g{-1.0, 1.0, 201, false};
    std::vector<double> amp(g.n);
    for (std::size_t i = 0; i < g.n; ++i) amp[i] = g.x(i); // zero at the center
    auto mask = node_mask(amp, g, 1e-8, 0.0);
    CHECK(mask[100]);          // the zero itself
    CHECK_FALSE(mask[110]);    // radius 0: neighbors stay live
    mask = node_mask(amp, g, 1e-8, 0.05);
    CHECK(mask[104]);          // 0.04 from the node
    CHECK_FALSE(mask[106]);    // 0.06 away
}

TEST_CASE("csv serialization carries 17 significant digits") {
    PhysicalParams p;
    Grid1D g{0.0, 1.0, 8, false};
    auto psi = sample_complex(g, [](double x) {
        return std::complex<double>(x / 3.0, -x / 7.0);
    });
    auto path = std::filesystem::temp_directory_path() / "bohmlab_field_test.csv";
    io::write_csv(psi, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,re,im");
    std::string line;
    std::size_t rows = 0;
    double x, re, im;
    char comma;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        ss >> x >> comma >> re >> comma >> im;
        CHECK(re == doctest::Approx(x / 3.0).epsilon(1e-16)); // bit round-trip
        ++rows;
    }
    CHECK(rows == g.n);
    std::filesystem::remove(path);
}

TEST_CASE("snapshot series serialize in long format with a t column") {
    Grid1D g{0.0, 1.0, 4, false};
    std::vector<ComplexField> series(2);
    for (int j = 0; j < 2; ++j) {
        series[j].grid = g;
        series[j].time = 0.5 * j;
        series[j].values.assign(g.n, {1.0 * j, -0.5});
    }
    auto path = std::filesystem::temp_directory_path() / "bohmlab_series_test.csv";
    io::write_series_csv(series, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,x,re,im");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 2 * g.n);
    std::filesystem::remove(path);
}
