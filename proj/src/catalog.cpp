#include "bohmlab/catalog.hpp"

#include <cmath>
#include <sstream>

#include "bohmlab/errors.hpp"
#include "bohmlab/specfun.hpp"

namespace bohmlab::catalog {

namespace {

constexpr double kPi = 3.14159265358979323846;

double round_to_int(double v) { return std::round(v); }

// exp(-y^2/2) with the argument split error-free. Plain rounding of y*y/2
// leaves ~(y^2/2) eps of relative jitter, which a second difference divides
// by dx^2; at the tight grids the shell-identity checks run on that would
// dominate the V_B error.
double gauss_envelope(double y) {
    const double p = y * y;
    const double e = std::fma(y, y, -p); // y*y = p + e exactly
    return std::exp(-0.5 * p) * (1.0 - 0.5 * e);
}

} // namespace

CatalogEntry ho_eigenstate(int n, const Grid1D& grid, double t,
                           const PhysicalParams& params) {
    if (n < 0) throw DomainError("ho_eigenstate: n must be nonnegative");
    const double omega = params.extra("omega");
    if (!(omega > 0.0)) throw ValidationError("omega: must be positive");
    const double hbar = params.hbar, m = params.mass;

    const double scale = std::sqrt(m * omega / hbar);
    double log_prefactor = 0.25 * std::log(m * omega / (kPi * hbar));
    for (int k = 1; k <= n; ++k) // (2^n n!)^{-1/2} accumulated in logs
        log_prefactor -= 0.5 * std::log(2.0 * static_cast<double>(k));
    const double prefactor = std::exp(log_prefactor);

    CatalogEntry entry;
    entry.field.grid = grid;
    entry.field.mode = AmplitudeMode::Signed;
    entry.field.time = t;
    entry.field.amplitude.resize(grid.n);
    entry.field.phase.assign(grid.n, -(n + 0.5) * hbar * omega * t);
    entry.potential.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        const double y = scale * x;
        entry.field.amplitude[i] = prefactor * gauss_envelope(y) * specfun::hermite(n, y);
        entry.potential[i] = 0.5 * m * omega * omega * x * x;
    }
    return entry;
}

CatalogEntry airy_solution(const Grid1D& grid, double t, const PhysicalParams& params) {
    const double beta = params.extra("beta");
    if (beta == 0.0) throw ValidationError("beta: must be nonzero");
    const double hbar = params.hbar, m = params.mass;
    const double b3 = beta * beta * beta;
    const double arg_scale = beta / std::pow(hbar, 2.0 / 3.0);
    const double x_shift = b3 * t * t / (4.0 * m * m);
    const double s_shift = b3 * t * t / (6.0 * m * m);

    CatalogEntry entry;
    entry.field.grid = grid;
    entry.field.mode = AmplitudeMode::Signed;
    entry.field.time = t;
    entry.field.amplitude.resize(grid.n);
    entry.field.phase.resize(grid.n);
    entry.potential.assign(grid.n, 0.0);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        entry.field.amplitude[i] = specfun::airy_ai(arg_scale * (x - x_shift));
        entry.field.phase[i] = (b3 * t / (2.0 * m)) * (x - s_shift);
    }
    return entry;
}

BohmPotentialField airy_bohm_closed_form(const Grid1D& grid, double t,
                                         const PhysicalParams& params) {
    const double beta = params.extra("beta");
    if (beta == 0.0) throw ValidationError("beta: must be nonzero");
    const double m = params.mass;
    const double b3 = beta * beta * beta;
    const double x_shift = b3 * t * t / (4.0 * m * m);

    BohmPotentialField vb;
    vb.grid = grid;
    vb.time = t;
    vb.values.resize(grid.n);
    vb.mask.assign(grid.n, false);
    for (std::size_t i = 0; i < grid.n; ++i)
        vb.values[i] = -(b3 / (2.0 * m)) * (grid.x(i) - x_shift);
    return vb;
}

CatalogEntry plane_wave(const Grid1D& grid, double t, const PhysicalParams& params) {
    const double k = params.extra("k");
    const double omega = params.extra("omega");
    if (!grid.periodic) throw UsageError("plane_wave: grid must be periodic");
    const double cycles = k * grid.length() / (2.0 * kPi);
    if (std::abs(cycles - round_to_int(cycles)) > 1e-9)
        throw UsageError("plane_wave: k incommensurate with the periodic box");

    const double amp = params.extra_or("amplitude", 1.0);
    CatalogEntry entry;
    entry.field.grid = grid;
    entry.field.mode = AmplitudeMode::NonNegative;
    entry.field.time = t;
    entry.field.amplitude.assign(grid.n, amp);
    entry.field.phase.resize(grid.n);
    entry.potential.assign(grid.n, 0.0);
    for (std::size_t i = 0; i < grid.n; ++i)
        entry.field.phase[i] = params.hbar * (k * grid.x(i) - omega * t);
    return entry;
}

ComplexField gaussian_packet(const Grid1D& grid, const PhysicalParams& params,
                             std::vector<std::string>* warnings) {
    const double sigma = params.extra("sigma");
    if (!(sigma > 0.0)) throw ValidationError("sigma: must be positive");
    const double k0 = params.extra_or("k0", 0.0);
    const double x0 = params.extra_or("x0", 0.0);
    if (sigma < 3.0 * grid.dx() && warnings)
        warnings->push_back("gaussian_packet: sigma below 3 dx, packet under-resolved");

    // Envelope convention: exp(-(x-x0)^2 / (4 sigma^2)); the unit-norm
    // prefactor is (2 pi sigma^2)^{-1/4}.
    const double prefactor = std::pow(2.0 * kPi * sigma * sigma, -0.25);
    ComplexField psi;
    psi.grid = grid;
    psi.time = 0.0;
    psi.values.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        const double d = x - x0;
        psi.values[i] = prefactor * std::exp(-d * d / (4.0 * sigma * sigma)) *
                        std::polar(1.0, k0 * x);
    }
    return psi;
}

double morse_ground_energy(const PhysicalParams& params) {
    const double d = params.extra("morse_d");
    const double alpha = params.extra("morse_alpha");
    const double lambda = std::sqrt(2.0 * params.mass * d) / (alpha * params.hbar);
    const double ha = params.hbar * alpha;
    return d - ha * ha / (2.0 * params.mass) * (lambda - 0.5) * (lambda - 0.5);
}

CatalogEntry morse_ground(const Grid1D& grid, double t, const PhysicalParams& params) {
    const double d = params.extra("morse_d");
    const double alpha = params.extra("morse_alpha");
    if (!(d > 0.0)) throw ValidationError("morse_d: must be positive");
    if (!(alpha > 0.0)) throw ValidationError("morse_alpha: must be positive");
    const double lambda = std::sqrt(2.0 * params.mass * d) / (alpha * params.hbar);
    if (!(lambda > 1.0))
        throw NoBoundStateError("morse_ground: lambda = " + std::to_string(lambda) +
                                " <= 1, no bound state");

    const double norm_const = std::sqrt(alpha / specfun::gamma_fn(2.0 * lambda - 1.0));
    const double e0 = morse_ground_energy(params);

    CatalogEntry entry;
    entry.field.grid = grid;
    entry.field.mode = AmplitudeMode::Signed; // nodeless and positive
    entry.field.time = t;
    entry.field.amplitude.resize(grid.n);
    entry.field.phase.assign(grid.n, -e0 * t);
    entry.potential.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        const double z = 2.0 * lambda * std::exp(-alpha * x);
        entry.field.amplitude[i] =
            norm_const * std::exp((lambda - 0.5) * std::log(z) - 0.5 * z);
        const double w = 1.0 - std::exp(-alpha * x);
        entry.potential[i] = d * w * w;
    }
    return entry;
}

CatalogEntry AnalyticSolution::realize(const Grid1D& grid, double t) const {
    switch (kind) {
        case SolutionKind::PlaneWave:
            return plane_wave(grid, t, params);
        case SolutionKind::HoEigenstate:
            return ho_eigenstate(n, grid, t, params);
        case SolutionKind::Airy:
            return airy_solution(grid, t, params);
        case SolutionKind::MorseGround:
            return morse_ground(grid, t, params);
        case SolutionKind::Gaussian: {
            if (t != 0.0)
                throw UsageError("gaussian catalog entry is defined at t = 0 only");
            auto psi = gaussian_packet(grid, params);
            CatalogEntry entry;
            entry.field = polar_decompose(psi, params, AmplitudeMode::NonNegative);
            entry.potential.assign(grid.n, 0.0);
            return entry;
        }
    }
    throw UsageError("unknown solution kind");
}

AnalyticSolution parse_solution(const std::string& name, const PhysicalParams& base) {
    auto colon = name.find(':');
    const std::string head = name.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::stringstream ss(name.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                args.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw UsageError("parse_solution: bad numeric argument '" + tok + "'");
            }
        }
    }

    AnalyticSolution sol;
    sol.params = base;
    if (head == "airy") {
        sol.kind = SolutionKind::Airy;
        if (!args.empty()) sol.params.extras["beta"] = args[0];
        sol.params.extras.try_emplace("beta", 1.0);
    } else if (head == "ho") {
        sol.kind = SolutionKind::HoEigenstate;
        if (args.empty()) throw UsageError("parse_solution: ho:n needs a quantum number");
        sol.n = static_cast<int>(args[0]);
        sol.params.extras.try_emplace("omega", 1.0);
    } else if (head == "plane") {
        sol.kind = SolutionKind::PlaneWave;
        if (args.size() < 2) throw UsageError("parse_solution: plane:k,omega needs both");
        sol.params.extras["k"] = args[0];
        sol.params.extras["omega"] = args[1];
    } else if (head == "gauss") {
        sol.kind = SolutionKind::Gaussian;
        if (args.empty()) throw UsageError("parse_solution: gauss:sigma[,k0] needs sigma");
        sol.params.extras["sigma"] = args[0];
        if (args.size() > 1) sol.params.extras["k0"] = args[1];
    } else if (head == "morse") {
        sol.kind = SolutionKind::MorseGround;
        if (args.size() < 2) throw UsageError("parse_solution: morse:D,alpha needs both");
        sol.params.extras["morse_d"] = args[0];
        sol.params.extras["morse_alpha"] = args[1];
    } else {
        throw UsageError("parse_solution: unknown solution '" + head + "'");
    }
    return sol;
}

} // namespace bohmlab::catalog
