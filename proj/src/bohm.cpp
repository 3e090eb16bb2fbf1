#include "bohmlab/bohm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bohmlab/errors.hpp"

namespace bohmlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_slices(const std::vector<PolarField>& slices) {
    if (slices.size() < 3 || slices.size() % 2 == 0)
        throw UsageError("residual: need an odd number (>= 3) of time slices");
    const Grid1D& g = slices.front().grid;
    double dt = slices[1].time - slices[0].time;
    if (!(dt > 0.0)) throw UsageError("residual: slice times must increase");
    for (std::size_t j = 0; j < slices.size(); ++j) {
        if (!(slices[j].grid == g)) throw UsageError("residual: slices on different grids");
        if (j > 0) {
            double step = slices[j].time - slices[j - 1].time;
            if (std::abs(step - dt) > 1e-9 * std::abs(dt))
                throw UsageError("residual: slice times not uniformly spaced");
        }
    }
}

// S is only defined modulo 2*pi*hbar per slice; re-align every slice to the
// middle one so centered time differences see a continuous branch.
std::vector<std::vector<double>> aligned_phases(const std::vector<PolarField>& slices,
                                                const PhysicalParams& params,
                                                const std::vector<bool>& mask) {
    const std::size_t mid = slices.size() / 2;
    const double period = 2.0 * kPi * params.hbar;
    std::vector<std::vector<double>> out(slices.size());
    for (std::size_t j = 0; j < slices.size(); ++j) {
        out[j] = slices[j].phase;
        if (j == mid) continue;
        std::vector<double> diffs;
        diffs.reserve(mask.size());
        for (std::size_t i = 0; i < mask.size(); ++i)
            if (!mask[i]) diffs.push_back(slices[j].phase[i] - slices[mid].phase[i]);
        if (diffs.empty()) continue;
        auto mid_it = diffs.begin() + diffs.size() / 2;
        std::nth_element(diffs.begin(), mid_it, diffs.end());
        double shift = period * std::round(*mid_it / period);
        if (shift != 0.0)
            for (auto& s : out[j]) s -= shift;
    }
    return out;
}

std::vector<bool> report_mask(const PolarField& middle, const ResidualOptions& opts) {
    auto mask = node_mask(middle.amplitude, middle.grid, opts.node_threshold_rel,
                          opts.node_exclusion_radius);
    if (!middle.grid.periodic && opts.boundary_trim > 0) {
        std::size_t trim = std::min(opts.boundary_trim, middle.grid.n);
        for (std::size_t i = 0; i < trim; ++i) {
            mask[i] = true;
            mask[middle.grid.n - 1 - i] = true;
        }
    }
    return mask;
}

ResidualReport finish_report(std::vector<double>&& residual, std::vector<bool>&& mask,
                             const Grid1D& grid, double time) {
    ResidualReport rep;
    rep.grid = grid;
    rep.time = time;
    rep.field = std::move(residual);
    rep.mask = std::move(mask);
    std::size_t masked = 0;
    double sum2 = 0.0;
    for (std::size_t i = 0; i < rep.field.size(); ++i) {
        if (rep.mask[i]) {
            rep.field[i] = 0.0;
            ++masked;
            continue;
        }
        rep.l_inf = std::max(rep.l_inf, std::abs(rep.field[i]));
        sum2 += rep.field[i] * rep.field[i];
    }
    std::size_t live = rep.field.size() - masked;
    if (live == 0) throw DegenerateFieldError("residual: every point is masked");
    rep.l2 = std::sqrt(sum2 / static_cast<double>(live));
    rep.masked_fraction =
        static_cast<double>(masked) / static_cast<double>(rep.field.size());
    return rep;
}

} // namespace

std::size_t BohmPotentialField::masked_count() const {
    std::size_t c = 0;
    for (bool m : mask) c += m ? 1 : 0;
    return c;
}

double BohmPotentialField::max_abs_unmasked() const {
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!mask[i]) m = std::max(m, std::abs(values[i]));
    return m;
}

BohmPotentialField bohm_potential(const PolarField& polar, const PhysicalParams& params,
                                  const BohmOptions& opts) {
    const std::size_t n = polar.grid.n;
    if (polar.amplitude.size() != n)
        throw UsageError("bohm_potential: sample count does not match grid");
    for (double a : polar.amplitude)
        if (!std::isfinite(a)) throw DomainError("bohm_potential: non-finite amplitude");

    auto a2 = derivative(polar.amplitude, polar.grid, 2, opts.scheme);
    auto mask =
        node_mask(polar.amplitude, polar.grid, opts.node_threshold_rel,
                  opts.node_exclusion_radius);

    BohmPotentialField out;
    out.grid = polar.grid;
    out.time = polar.time;
    out.mask = std::move(mask);
    out.values.assign(n, 0.0);
    const double factor = -params.hbar * params.hbar / (2.0 * params.mass);
    std::size_t live = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (out.mask[i]) continue;
        out.values[i] = factor * a2[i] / polar.amplitude[i];
        ++live;
    }
    if (live == 0) throw DegenerateFieldError("bohm_potential: field is fully masked");
    return out;
}

ResidualReport qhj_residual(const std::vector<PolarField>& slices,
                            const std::vector<double>& potential,
                            const PhysicalParams& params, const ResidualOptions& opts) {
    check_slices(slices);
    const std::size_t mid = slices.size() / 2;
    const PolarField& m = slices[mid];
    const std::size_t n = m.grid.n;
    if (potential.size() != n)
        throw UsageError("qhj_residual: potential sample count does not match grid");

    auto mask = report_mask(m, opts);
    auto phases = aligned_phases(slices, params, mask);
    const double dx = m.grid.dx();
    const double dt = slices[mid + 1].time - slices[mid].time;

    auto s_x = stencil::d1_o4(phases[mid], dx);
    auto a_xx = stencil::d2_o4(m.amplitude, dx);

    std::vector<double> residual(n, 0.0);
    const double vb_factor = -params.hbar * params.hbar / (2.0 * params.mass);
    for (std::size_t i = 0; i < n; ++i) {
        if (mask[i]) continue;
        double s_t = (phases[mid + 1][i] - phases[mid - 1][i]) / (2.0 * dt);
        double vb = vb_factor * a_xx[i] / m.amplitude[i];
        residual[i] =
            s_x[i] * s_x[i] / (2.0 * params.mass) + vb + potential[i] + s_t;
    }
    return finish_report(std::move(residual), std::move(mask), m.grid, m.time);
}

ResidualReport continuity_residual(const std::vector<PolarField>& slices,
                                   const PhysicalParams& params,
                                   const ResidualOptions& opts) {
    check_slices(slices);
    const std::size_t mid = slices.size() / 2;
    const PolarField& m = slices[mid];
    const std::size_t n = m.grid.n;

    auto mask = report_mask(m, opts);
    auto phases = aligned_phases(slices, params, mask);
    const double dx = m.grid.dx();
    const double dt = slices[mid + 1].time - slices[mid].time;

    auto s_x = stencil::d1_o4(phases[mid], dx);
    std::vector<double> flux(n);
    for (std::size_t i = 0; i < n; ++i)
        flux[i] = m.amplitude[i] * m.amplitude[i] * s_x[i];
    auto flux_x = stencil::d1_o4(flux, dx);

    std::vector<double> residual(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (mask[i]) continue;
        double ap = slices[mid + 1].amplitude[i], am = slices[mid - 1].amplitude[i];
        double rho_t = (ap * ap - am * am) / (2.0 * dt);
        residual[i] = flux_x[i] / params.mass + rho_t;
    }
    return finish_report(std::move(residual), std::move(mask), m.grid, m.time);
}

ForceField bohm_force_and_acceleration(const BohmPotentialField& vb,
                                       const PhysicalParams& params) {
    const std::size_t n = vb.values.size();
    ForceField out;
    out.grid = vb.grid;
    out.force.assign(n, 0.0);
    out.acceleration.assign(n, 0.0);
    out.mask = vb.mask;

    const double dx = vb.grid.dx();
    std::size_t i = 0;
    while (i < n) {
        if (vb.mask[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && !vb.mask[j]) ++j;
        const std::size_t len = j - i; // contiguous unmasked run [i, j)
        if (len < 4) {
            for (std::size_t k = i; k < j; ++k) out.mask[k] = true;
        } else {
            Grid1D run{vb.grid.x(i), vb.grid.x(j - 1), len, false};
            std::vector<double> seg(vb.values.begin() + static_cast<long>(i),
                                    vb.values.begin() + static_cast<long>(j));
            (void)dx; // run.dx() == dx by construction
            auto d = derivative(seg, run, 1, Scheme::FiniteDifference);
            for (std::size_t k = 0; k < len; ++k) {
                out.force[i + k] = -d[k];
                out.acceleration[i + k] = -d[k] / params.mass;
            }
        }
        i = j;
    }
    return out;
}

Trajectory integrate_trajectory(const std::vector<PolarField>& s_fields, double x0,
                                const PhysicalParams& params) {
    if (s_fields.size() < 2)
        throw UsageError("integrate_trajectory: need at least two time slices");
    const Grid1D& g = s_fields.front().grid;
    if (!g.contains(x0)) throw UsageError("integrate_trajectory: x0 outside the grid");
    const double dt = s_fields[1].time - s_fields[0].time;
    if (!(dt > 0.0)) throw UsageError("integrate_trajectory: times must increase");
    for (std::size_t j = 1; j < s_fields.size(); ++j) {
        if (!(s_fields[j].grid == g))
            throw UsageError("integrate_trajectory: slices on different grids");
        if (std::abs((s_fields[j].time - s_fields[j - 1].time) - dt) > 1e-9 * dt)
            throw UsageError("integrate_trajectory: time series not uniform");
    }

    const double dx = g.dx();
    std::vector<std::vector<double>> vel(s_fields.size());
    for (std::size_t j = 0; j < s_fields.size(); ++j) {
        vel[j] = stencil::d1_o4(s_fields[j].phase, dx);
        for (auto& v : vel[j]) v /= params.mass;
    }

    const double x_last = g.periodic ? g.x_max - dx : g.x_max;
    auto sample = [&](double x, std::size_t j) {
        double u = (x - g.x_min) / dx;
        auto i = static_cast<std::size_t>(u);
        if (i + 1 >= g.n) i = g.n - 2;
        double w = u - static_cast<double>(i);
        return (1.0 - w) * vel[j][i] + w * vel[j][i + 1];
    };
    auto velocity = [&](double x, double tfrac, std::size_t j) {
        // linear in t between slices j and j+1
        return (1.0 - tfrac) * sample(x, j) + tfrac * sample(x, j + 1);
    };

    Trajectory traj;
    double x = x0;
    traj.times.push_back(s_fields[0].time);
    traj.positions.push_back(x);
    traj.velocities.push_back(sample(x, 0));
    for (std::size_t j = 0; j + 1 < s_fields.size(); ++j) {
        double k1 = velocity(x, 0.0, j);
        double k2 = velocity(x + 0.5 * dt * k1, 0.5, j);
        double k3 = velocity(x + 0.5 * dt * k2, 0.5, j);
        double k4 = velocity(x + dt * k3, 1.0, j);
        double x_next = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (x_next < g.x_min || x_next > x_last) {
            traj.truncated = true;
            break;
        }
        x = x_next;
        traj.times.push_back(s_fields[j + 1].time);
        traj.positions.push_back(x);
        traj.velocities.push_back(sample(x, j + 1));
    }
    return traj;
}

} // namespace bohmlab
