#include "bohmlab/evolve.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "bohmlab/errors.hpp"
#include "bohmlab/grid.hpp"
#include "fft.hpp"

namespace bohmlab::evolve {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool has_nan(const std::complex<double>* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return true;
    return false;
}

} // namespace

PotentialFn static_potential(std::vector<double> samples, const Grid1D& grid) {
    if (samples.size() != grid.n)
        throw UsageError("static_potential: sample count does not match grid");
    return [samples = std::move(samples), grid](double x, double /*t*/) {
        auto i = static_cast<std::size_t>(std::llround((x - grid.x_min) / grid.dx()));
        if (i >= samples.size()) i = samples.size() - 1;
        return samples[i];
    };
}

void PropagatorConfig::validate() const {
    if (!(dt > 0.0)) throw ValidationError("dt: must be positive");
    if (steps < 1) throw ValidationError("steps: must be at least 1");
    if (record_every < 1) throw ValidationError("record_every: must be at least 1");
}

std::vector<ComplexField> evolve(const ComplexField& psi0, const PropagatorConfig& cfg,
                                 const PhysicalParams& params) {
    cfg.validate();
    const Grid1D& g = psi0.grid;
    if (!g.periodic) throw UsageError("evolve: grid must be periodic");
    if (!is_power_of_two(g.n) || g.n < 8)
        throw UsageError("evolve: grid size must be a power of two (>= 8)");
    if (psi0.values.size() != g.n)
        throw UsageError("evolve: value count does not match grid");

    const std::size_t n = g.n;
    const double dt = cfg.dt;
    const double hbar = params.hbar, m = params.mass;

    // Kinetic half of the Strang step: exp(-i hbar k^2 dt / 2m) in k-space.
    const auto k = fft::wavenumbers(g);
    std::vector<std::complex<double>> kinetic_phase(n);
    for (std::size_t i = 0; i < n; ++i)
        kinetic_phase[i] = std::polar(1.0, -hbar * k[i] * k[i] * dt / (2.0 * m));

    const auto xs = g.points();
    std::vector<double> v_now(n, 0.0), v_next(n, 0.0);
    auto sample_potential = [&](double t, std::vector<double>& out) {
        if (!cfg.potential) return;
        for (std::size_t i = 0; i < n; ++i) out[i] = cfg.potential(xs[i], t);
    };

    fft::Plan plan(n);
    auto* buf = plan.data();
    for (std::size_t i = 0; i < n; ++i) buf[i] = psi0.values[i];

    std::vector<ComplexField> snapshots;
    auto record = [&](double t) {
        ComplexField f;
        f.grid = g;
        f.time = t;
        f.values.assign(buf, buf + n);
        snapshots.push_back(std::move(f));
    };
    record(psi0.time);

    sample_potential(psi0.time, v_now);
    for (std::size_t step = 0; step < cfg.steps; ++step) {
        const double t = psi0.time + static_cast<double>(step) * dt;
        if (cfg.potential) {
            for (std::size_t i = 0; i < n; ++i)
                buf[i] *= std::polar(1.0, -v_now[i] * dt / (2.0 * hbar));
        }
        plan.forward();
        for (std::size_t i = 0; i < n; ++i) buf[i] *= kinetic_phase[i];
        plan.inverse();
        if (cfg.potential) {
            sample_potential(t + dt, v_next);
            for (std::size_t i = 0; i < n; ++i)
                buf[i] *= std::polar(1.0, -v_next[i] * dt / (2.0 * hbar));
            v_now.swap(v_next);
        }
        if (has_nan(buf, n))
            throw DivergenceError("evolve: NaN detected at step " + std::to_string(step + 1),
                                  step + 1);
        if ((step + 1) % cfg.record_every == 0 || step + 1 == cfg.steps)
            record(psi0.time + static_cast<double>(step + 1) * dt);
    }
    return snapshots;
}

std::vector<Observables> observables(const std::vector<ComplexField>& series,
                                     const PotentialFn& potential,
                                     const PhysicalParams& params) {
    std::vector<Observables> out;
    out.reserve(series.size());
    for (const auto& psi : series) {
        const Grid1D& g = psi.grid;
        const std::size_t n = g.n;
        const double dx = g.dx();

        Observables ob;
        ob.t = psi.time;

        double norm2 = 0.0, xmean = 0.0, epot = 0.0;
        std::size_t imax = 0;
        double pmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double p = std::norm(psi.values[i]);
            norm2 += p;
            xmean += g.x(i) * p;
            if (potential) epot += potential(g.x(i), psi.time) * p;
            if (p > pmax) {
                pmax = p;
                imax = i;
            }
        }
        norm2 *= dx;
        ob.norm = std::sqrt(norm2);
        ob.x_mean = xmean * dx / norm2;

        // Kinetic energy from the spectrum (Parseval).
        std::vector<std::complex<double>> hat(psi.values);
        fft::forward(hat);
        const auto k = fft::wavenumbers(g);
        double ekin = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            ekin += params.hbar * params.hbar * k[i] * k[i] /
                    (2.0 * params.mass) * std::norm(hat[i]);
        ekin *= dx / static_cast<double>(n);
        ob.energy = ekin + epot * dx;

        // Sub-grid peak: parabola through log|psi|^2 at the max and neighbors.
        const std::size_t il = (imax + n - 1) % n, ir = (imax + 1) % n;
        const double lm = std::log(std::max(std::norm(psi.values[il]), 1e-300));
        const double l0 = std::log(std::max(pmax, 1e-300));
        const double lp = std::log(std::max(std::norm(psi.values[ir]), 1e-300));
        const double denom = lm - 2.0 * l0 + lp;
        double shift = 0.0;
        if (denom < 0.0) shift = 0.5 * (lm - lp) / denom;
        ob.x_peak = g.x(imax) + shift * dx;

        out.push_back(ob);
    }
    return out;
}

ComplexField cosine_taper(const ComplexField& psi, double fraction) {
    if (!(fraction > 0.0) || fraction >= 0.5)
        throw UsageError("cosine_taper: fraction must lie in (0, 0.5)");
    ComplexField out = psi;
    const double L = psi.grid.length();
    const double ramp = fraction * L;
    const double x_last = psi.grid.periodic ? psi.grid.x_max - psi.grid.dx() : psi.grid.x_max;
    for (std::size_t i = 0; i < psi.grid.n; ++i) {
        const double x = psi.grid.x(i);
        double w = 1.0;
        if (x < psi.grid.x_min + ramp) {
            double u = (x - psi.grid.x_min) / ramp;
            w = 0.5 * (1.0 - std::cos(kPi * u));
        } else if (x > x_last - ramp) {
            double u = (x_last - x) / ramp;
            w = 0.5 * (1.0 - std::cos(kPi * u));
        }
        out.values[i] *= w;
    }
    return out;
}

std::array<double, 3> fit_quadratic(const std::vector<double>& t,
                                    const std::vector<double>& x) {
    if (t.size() != x.size() || t.size() < 3)
        throw UsageError("fit_quadratic: need matching series with >= 3 points");
    // Normal equations for [1, t, t^2]; small and well-conditioned for the
    // short time windows used here.
    double s0 = static_cast<double>(t.size());
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0, b0 = 0, b1 = 0, b2 = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double ti = t[i], ti2 = ti * ti;
        s1 += ti;
        s2 += ti2;
        s3 += ti2 * ti;
        s4 += ti2 * ti2;
        b0 += x[i];
        b1 += ti * x[i];
        b2 += ti2 * x[i];
    }
    // Solve the 3x3 system by Cramer's rule.
    const double det = s0 * (s2 * s4 - s3 * s3) - s1 * (s1 * s4 - s2 * s3) +
                       s2 * (s1 * s3 - s2 * s2);
    if (det == 0.0) throw EvalError("fit_quadratic: singular normal equations");
    const double c0 = (b0 * (s2 * s4 - s3 * s3) - s1 * (b1 * s4 - b2 * s3) +
                       s2 * (b1 * s3 - b2 * s2)) /
                      det;
    const double c1 = (s0 * (b1 * s4 - b2 * s3) - b0 * (s1 * s4 - s2 * s3) +
                       s2 * (s1 * b2 - s2 * b1)) /
                      det;
    const double c2 = (s0 * (s2 * b2 - s3 * b1) - s1 * (s1 * b2 - s2 * b1) +
                       b0 * (s1 * s3 - s2 * s2)) /
                      det;
    return {c0, c1, c2};
}

} // namespace bohmlab::evolve
