#include "ringdesign/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "ringdesign/error.hpp"
#include "ringdesign/units.hpp"

namespace ringdesign {

namespace {

// Candidate points closer than this to a vanishing sin/cos denominator are rejected.
constexpr double singular_guard = 1e-9;
// Continuation step in ln(k) before any adaptive halving.
constexpr double continuation_step = 0.1;
constexpr double min_continuation_fraction = 1e-6;
// A warm-started solve must stay this close to its guess to count as the same branch.
constexpr double warm_start_max_jump = deg_to_rad(5.0);

using Vec2 = std::array<double, 2>;

bool near_singular(double ta, double tb) {
    return std::abs(std::sin(ta)) < singular_guard || std::abs(std::sin(tb)) < singular_guard ||
           std::abs(std::cos(ta - tb)) < singular_guard ||
           std::abs(std::cos(ta + tb)) < singular_guard;
}

bool inside_domain(const Vec2& x) {
    return x[0] > 0.0 && x[0] < pi && x[1] > 0.0 && x[1] < pi;
}

double max_abs(const Vec2& r) { return std::max(std::abs(r[0]), std::abs(r[1])); }
double norm2(const Vec2& r) { return std::hypot(r[0], r[1]); }

Vec2 residual_vec(const Vec2& x, double m, double k) {
    auto [r1, r2] = dualband_residuals(x[0], x[1], m, k);
    return {r1, r2};
}

struct NewtonResult {
    bool converged = false;
    bool hit_singular = false;
    Vec2 x{};
    double residual = std::numeric_limits<double>::infinity();
};

// Damped Newton on the two residuals with a central-difference Jacobian.
NewtonResult newton(Vec2 x, double m, double k, const SolverOptions& opts) {
    NewtonResult out;
    if (!inside_domain(x) || near_singular(x[0], x[1])) {
        out.hit_singular = true;
        out.x = x;
        return out;
    }
    Vec2 r = residual_vec(x, m, k);
    const double h = opts.jacobian_step;
    for (int it = 0; it < opts.max_iter; ++it) {
        if (!std::isfinite(r[0]) || !std::isfinite(r[1])) break;
        if (max_abs(r) < opts.tol) {
            out.converged = true;
            break;
        }
        double jac[2][2];
        for (int j = 0; j < 2; ++j) {
            Vec2 xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            const Vec2 rp = residual_vec(xp, m, k);
            const Vec2 rm = residual_vec(xm, m, k);
            jac[0][j] = (rp[0] - rm[0]) / (2.0 * h);
            jac[1][j] = (rp[1] - rm[1]) / (2.0 * h);
        }
        const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if (!std::isfinite(det) || std::abs(det) < 1e-300) break;
        const Vec2 dx{-(jac[1][1] * r[0] - jac[0][1] * r[1]) / det,
                      -(-jac[1][0] * r[0] + jac[0][0] * r[1]) / det};

        const double n0 = norm2(r);
        bool accepted = false;
        for (double lambda = 1.0; lambda > 1e-6; lambda *= 0.5) {
            const Vec2 xn{x[0] + lambda * dx[0], x[1] + lambda * dx[1]};
            if (!inside_domain(xn) || near_singular(xn[0], xn[1])) continue;
            const Vec2 rn = residual_vec(xn, m, k);
            if (!std::isfinite(rn[0]) || !std::isfinite(rn[1])) continue;
            if (norm2(rn) < n0 || max_abs(rn) < opts.tol) {
                x = xn;
                r = rn;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    out.x = x;
    out.residual = max_abs(r);
    out.converged = out.converged || out.residual < opts.tol;
    return out;
}

// Scans the residual norm over (0, pi)^2, polishes the best cells with Newton and
// returns the converged root nearest to `anchor`.
std::optional<Vec2> grid_fallback(double m, double k, const Vec2& anchor, const SolverOptions& opts) {
    const int n = std::max(opts.grid_n, 8);
    struct Cell {
        double score;
        Vec2 x;
    };
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const double ta = pi * (i + 0.5) / n;
        for (int j = 0; j < n; ++j) {
            const double tb = pi * (j + 0.5) / n;
            if (near_singular(ta, tb)) continue;
            const Vec2 r = residual_vec({ta, tb}, m, k);
            const double s = norm2(r);
            if (std::isfinite(s)) cells.push_back({s, {ta, tb}});
        }
    }
    const std::size_t keep = std::min<std::size_t>(48, cells.size());
    std::partial_sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(keep), cells.end(),
                      [](const Cell& a, const Cell& b) { return a.score < b.score; });

    std::optional<Vec2> best;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < keep; ++c) {
        const NewtonResult nr = newton(cells[c].x, m, k, opts);
        if (!nr.converged || !inside_domain(nr.x)) continue;
        const double d = std::hypot(nr.x[0] - anchor[0], nr.x[1] - anchor[1]);
        if (d < best_dist) {
            best_dist = d;
            best = nr.x;
        }
    }
    return best;
}

void check_mk(double m, double k) {
    if (!(m > 1.0) || m > max_frequency_ratio || !std::isfinite(m))
        throw Error(ErrorCode::ratio_out_of_range, "frequency ratio must lie in (1, 10]");
    if (!(k > 0.0) || !std::isfinite(k))
        throw Error(ErrorCode::invalid_argument, "k = n2/n1 must be positive and finite");
}

ElectricalLengths finish(const Vec2& x, double m, double k, bool grid) {
    ElectricalLengths out;
    out.theta_alpha = x[0];
    out.theta_beta = x[1];
    out.residual = max_abs(residual_vec(x, m, k));
    out.used_grid_fallback = grid;
    return out;
}

}  // namespace

std::pair<double, double> dualband_residuals(double ta, double tb, double m, double k) {
    const double r1 = std::sin(m * tb) / std::sin(tb) - std::sqrt(k) * std::sin(m * ta) / std::sin(ta);
    const double r2 =
        std::cos(m * (ta - tb)) / std::cos(ta - tb) - std::cos(m * (ta + tb)) / std::cos(ta + tb);
    return {r1, r2};
}

ElectricalLengths solve_electrical_lengths(double m, double k, const SolverOptions& opts) {
    check_mk(m, k);
    if (!(opts.tol > 0.0) || opts.max_iter < 1)
        throw Error(ErrorCode::invalid_argument, "solver options need tol > 0 and max_iter >= 1");

    const double seed = pi / (1.0 + m);
    Vec2 x{seed, seed};
    if (near_singular(x[0], x[1]))
        throw Error(ErrorCode::singular_point,
                    "the k = 1 anchor pi/(1+m) sits on a singular denominator for this m");

    // Walk t from 0 to 1 with k(t) = k^t; halve the step on Newton failure.
    const double log_k = std::log(k);
    const int base_steps = std::max(1, static_cast<int>(std::ceil(std::abs(log_k) / continuation_step)));
    double t = 0.0;
    double dt = 1.0 / base_steps;
    bool stalled = false;
    bool saw_singular = false;
    while (t < 1.0) {
        const double t_next = std::min(1.0, t + dt);
        const double k_t = std::exp(log_k * t_next);
        const NewtonResult nr = newton(x, m, k_t, opts);
        if (nr.converged && inside_domain(nr.x)) {
            x = nr.x;
            t = t_next;
            dt = std::min(dt * 1.5, 1.0 / base_steps);
            continue;
        }
        saw_singular = saw_singular || nr.hit_singular;
        dt *= 0.5;
        if (dt < min_continuation_fraction) {
            stalled = true;
            break;
        }
    }
    if (!stalled) return finish(x, m, k, false);

    if (auto root = grid_fallback(m, k, x, opts)) return finish(*root, m, k, true);
    if (saw_singular)
        throw Error(ErrorCode::singular_point,
                    "continuation reached a singular denominator and no admissible root was found");
    std::ostringstream os;
    os << "no dual-band solution on the admissible branch for m = " << m << ", k = " << k;
    throw Error(ErrorCode::no_solution_found, os.str());
}

ElectricalLengths solve_electrical_lengths_from(double m, double k, double ta_guess, double tb_guess,
                                                const SolverOptions& opts) {
    check_mk(m, k);
    const NewtonResult nr = newton({ta_guess, tb_guess}, m, k, opts);
    if (nr.converged && inside_domain(nr.x) &&
        std::hypot(nr.x[0] - ta_guess, nr.x[1] - tb_guess) < warm_start_max_jump)
        return finish(nr.x, m, k, false);
    return solve_electrical_lengths(m, k, opts);
}

std::pair<double, double> compute_phase_shifts(double ta, double tb, double m, double n1, double n2) {
    if (!(n1 > 0.0) || !(n2 > 0.0))
        throw Error(ErrorCode::invalid_argument, "power-division ratios must be positive");
    const double c1 = (std::sqrt(n1) * std::cos(ta) + std::cos(tb)) / std::sqrt(n1 + 1.0);
    const double c2 = (std::sqrt(n2) * std::cos(m * ta) + std::cos(m * tb)) / std::sqrt(n2 + 1.0);
    auto phase = [](double c, const char* which) {
        constexpr double slack = 1e-12;
        if (!std::isfinite(c) || std::abs(c) > 1.0 + slack) {
            std::ostringstream os;
            os << "cos(" << which << ") = " << c << " lies outside [-1, 1]";
            throw Error(ErrorCode::phase_out_of_range, os.str());
        }
        const double phi = std::acos(std::clamp(c, -1.0, 1.0));
        if (phi < singular_guard || phi > pi - singular_guard) {
            std::ostringstream os;
            os << which << " = " << rad_to_deg(phi) << " deg is degenerate; impedances would vanish";
            throw Error(ErrorCode::degenerate_phase, os.str());
        }
        return phi;
    };
    return {phase(c1, "phi1"), phase(c2, "phi2")};
}

RingImpedances compute_ring_impedances(double ta, double tb, double phi1, double phi2, double m,
                                       double n1, double n2, double z0) {
    const double s_a = std::sin(ta), s_b = std::sin(tb);
    const double s_ma = std::sin(m * ta), s_mb = std::sin(m * tb);
    for (double s : {s_a, s_b, s_ma, s_mb}) {
        if (std::abs(s) < 1e-12)
            throw Error(ErrorCode::singular_length, "a ring line is a multiple of 180 degrees");
    }
    const double za1 = z0 * std::sqrt(1.0 + n1) / std::sqrt(n1) * std::sin(phi1) / s_a;
    const double za2 = z0 * std::sqrt(1.0 + n2) / std::sqrt(n2) * std::sin(phi2) / s_ma;
    const double zb1 = z0 * std::sqrt(1.0 + n1) * std::sin(phi1) / s_b;
    const double zb2 = z0 * std::sqrt(1.0 + n2) * std::sin(phi2) / s_mb;
    if (!(za1 > 0.0) || !(zb1 > 0.0))
        throw Error(ErrorCode::negative_impedance, "ring impedance is not positive; wrong branch");
    RingImpedances out;
    out.z_alpha = za1;
    out.z_beta = zb1;
    out.residual_impedance = std::max(std::abs(za1 - za2) / za1, std::abs(zb1 - zb2) / zb1);
    return out;
}

RingSolution solve_ring(double m, double n1, double n2, double z0, const SolverOptions& opts) {
    if (!(z0 > 0.0)) throw Error(ErrorCode::invalid_argument, "z0 must be positive");
    const ElectricalLengths len = solve_electrical_lengths(m, n2 / n1, opts);
    auto [phi1, phi2] = compute_phase_shifts(len.theta_alpha, len.theta_beta, m, n1, n2);
    const RingImpedances z =
        compute_ring_impedances(len.theta_alpha, len.theta_beta, phi1, phi2, m, n1, n2, z0);
    RingSolution s;
    s.theta_alpha = len.theta_alpha;
    s.theta_beta = len.theta_beta;
    s.phi1 = phi1;
    s.phi2 = phi2;
    s.z_alpha = z.z_alpha;
    s.z_beta = z.z_beta;
    s.residual_dualband = len.residual;
    s.residual_impedance = z.residual_impedance;
    return s;
}

IsolationResistors choose_isolation_resistors(double z0, const ResistorChoice& choice) {
    if (!(z0 > 0.0)) throw Error(ErrorCode::invalid_argument, "z0 must be positive");
    if (choice.kind == ResistorChoice::Kind::balanced) return {2.0 * z0, 2.0 * z0};
    if (!(choice.n > 0.0) || !std::isfinite(choice.n))
        throw Error(ErrorCode::invalid_argument, "resistor ratio n must be positive");
    return {(choice.n + 1.0) * z0, (choice.n + 1.0) / choice.n * z0};
}

namespace {

void add_window_warnings(Design& d, const ImpedanceWindow& window) {
    auto check = [&](const std::string& name, double z) {
        if (!(z >= window.z_min && z <= window.z_max)) {
            std::ostringstream os;
            os << name << " = " << z << " ohm is outside the realizable window [" << window.z_min
               << ", " << window.z_max << "] ohm";
            d.warnings.push_back(os.str());
        }
    };
    check("z_alpha", d.ring.z_alpha);
    check("z_beta", d.ring.z_beta);
    for (const auto& c : d.feasibility.impedances) {
        if (!c.in_window) check(c.name, c.value);
    }
    if (!d.feasibility.feasible) d.warnings.push_back(d.feasibility.advisory);
}

}  // namespace

Design design_rrc(const DesignSpec& spec, const SolverOptions& opts, const ImpedanceWindow& window) {
    Design d;
    d.spec = spec;
    d.ring = solve_ring(spec.m(), spec.n1, spec.n2, spec.z0, opts);
    d.z_gamma = spec.z_gamma.value_or(d.ring.z_alpha);
    d.shifter = synthesize_shifter(spec.topology, spec.m(), d.z_gamma);
    d.feasibility = check_feasibility(d.shifter, window);
    if (spec.z_gamma && std::abs(*spec.z_gamma - d.ring.z_alpha) > 1e-9 * d.ring.z_alpha)
        d.warnings.push_back("z_gamma differs from z_alpha; the coupler is no longer exact at f1/f2");
    add_window_warnings(d, window);
    return d;
}

Design design_gpd(const DesignSpec& spec, const SolverOptions& opts, ResistorChoice r_choice,
                  const ImpedanceWindow& window) {
    Design d;
    d.spec = spec;
    d.ring = solve_ring(spec.m(), spec.n1, spec.n2, spec.z0, opts);
    d.z_gamma = spec.z_gamma.value_or(spec.z0);
    d.shifter = synthesize_shifter(spec.topology, spec.m(), d.z_gamma);
    d.resistors = choose_isolation_resistors(spec.z0, r_choice);
    d.feasibility = check_feasibility(d.shifter, window);
    add_window_warnings(d, window);
    return d;
}

Design design(const DesignSpec& spec, const SolverOptions& opts, ResistorChoice r_choice,
              const ImpedanceWindow& window) {
    return spec.device == Device::rrc ? design_rrc(spec, opts, window)
                                      : design_gpd(spec, opts, r_choice, window);
}

RingSolution interchange_symmetry_map(const RingSolution& s) {
    RingSolution out = s;
    std::swap(out.theta_alpha, out.theta_beta);
    std::swap(out.z_alpha, out.z_beta);
    return out;
}

}  // namespace ringdesign
