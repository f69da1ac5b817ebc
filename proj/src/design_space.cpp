#include "ringdesign/design_space.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "ringdesign/error.hpp"
#include "ringdesign/units.hpp"

namespace ringdesign {

std::string_view space_figure_name(SpaceFigure f) noexcept {
    switch (f) {
        case SpaceFigure::lengths: return "lengths";
        case SpaceFigure::impedances: return "impedances";
        case SpaceFigure::shifter: return "shifter";
    }
    return "lengths";
}

SpaceFigure parse_space_figure(std::string_view s) {
    if (s == "lengths") return SpaceFigure::lengths;
    if (s == "impedances") return SpaceFigure::impedances;
    if (s == "shifter") return SpaceFigure::shifter;
    throw Error(ErrorCode::invalid_argument, "unknown figure '" + std::string(s) + "'");
}

std::vector<double> m_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) || !std::isfinite(stop))
        throw Error(ErrorCode::invalid_argument, "m grid needs start <= stop and step > 0");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 0.5)) + 1;
    if (count > 1000000) throw Error(ErrorCode::invalid_argument, "m grid is too large");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    // Index-based values keep e.g. 2.40 exact to the rounding of start + i*step.
    for (long i = 0; i < count; ++i) out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    return out;
}

namespace {

std::vector<double> sorted_unique(std::vector<double> v, const char* what) {
    for (double x : v)
        if (!(x > 0.0) || !std::isfinite(x))
            throw Error(ErrorCode::invalid_argument, std::string(what) + " values must be positive");
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.empty()) throw Error(ErrorCode::invalid_argument, std::string(what) + " list is empty");
    return v;
}

void check_m_values(const std::vector<double>& m) {
    for (double x : m)
        if (!(x > 1.0) || x > max_frequency_ratio)
            throw Error(ErrorCode::ratio_out_of_range, "sweep m values must lie in (1, 10]");
}

// Walks one k-curve in increasing m, warm-starting from the previous cell.
std::vector<SpaceRow> sweep_curve(const std::vector<double>& ms, double k, double n1, double z0,
                                  const SolverOptions& opts) {
    std::vector<SpaceRow> rows;
    std::optional<std::pair<double, double>> prev;
    for (double m : ms) {
        SpaceRow row;
        row.m = m;
        row.k = k;
        try {
            const ElectricalLengths len =
                prev ? solve_electrical_lengths_from(m, k, prev->first, prev->second, opts)
                     : solve_electrical_lengths(m, k, opts);
            row.converged = true;
            row.ring.theta_alpha = len.theta_alpha;
            row.ring.theta_beta = len.theta_beta;
            row.ring.residual_dualband = len.residual;
            prev = std::make_pair(len.theta_alpha, len.theta_beta);
        } catch (const Error& e) {
            row.error = e.what();
            prev.reset();
            rows.push_back(std::move(row));
            continue;
        }
        try {
            const double n2 = k * n1;
            auto [phi1, phi2] =
                compute_phase_shifts(row.ring.theta_alpha, row.ring.theta_beta, m, n1, n2);
            const RingImpedances z = compute_ring_impedances(row.ring.theta_alpha, row.ring.theta_beta,
                                                             phi1, phi2, m, n1, n2, z0);
            row.ring.phi1 = phi1;
            row.ring.phi2 = phi2;
            row.ring.z_alpha = z.z_alpha;
            row.ring.z_beta = z.z_beta;
            row.ring.residual_impedance = z.residual_impedance;
            row.phases_valid = true;
            row.impedance_in_range = z.z_alpha >= sweep_z_min && z.z_alpha <= sweep_z_max &&
                                     z.z_beta >= sweep_z_min && z.z_beta <= sweep_z_max;
        } catch (const Error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

SpaceTable run(SpaceFigure fig, const std::vector<double>& m_values, const std::vector<double>& k_set,
               double n1, double z0, const SolverOptions& opts) {
    if (!(n1 > 0.0) || !std::isfinite(n1)) throw Error(ErrorCode::invalid_argument, "n1 must be positive");
    if (!(z0 > 0.0)) throw Error(ErrorCode::invalid_argument, "z0 must be positive");
    const auto ms = sorted_unique(m_values, "m");
    check_m_values(ms);
    const auto ks = sorted_unique(k_set, "k");
    SpaceTable t;
    t.figure = fig;
    t.n1 = n1;
    t.z0 = z0;
    for (double k : ks) {
        auto rows = sweep_curve(ms, k, n1, z0, opts);
        t.rows.insert(t.rows.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
    }
    return t;
}

}  // namespace

SpaceTable sweep_lengths(const std::vector<double>& m_values, const std::vector<double>& k_set,
                         const SolverOptions& opts) {
    return run(SpaceFigure::lengths, m_values, k_set, 1.0, 50.0, opts);
}

SpaceTable sweep_impedances(const std::vector<double>& m_values, const std::vector<double>& k_set,
                            double n1, double z0, const SolverOptions& opts) {
    return run(SpaceFigure::impedances, m_values, k_set, n1, z0, opts);
}

SpaceTable sweep_shifter(Topology topology, const std::vector<double>& m_values,
                         const std::vector<double>& k_set, double n1, double z0,
                         const ImpedanceWindow& window, const SolverOptions& opts) {
    SpaceTable t = run(SpaceFigure::shifter, m_values, k_set, n1, z0, opts);
    t.topology = topology;
    for (auto& row : t.rows) {
        if (!row.phases_valid) continue;
        try {
            row.shifter = synthesize_shifter(topology, row.m, row.ring.z_alpha);
            row.feasibility = check_feasibility(*row.shifter, window);
        } catch (const Error& e) {
            row.error = e.what();
        }
    }
    return t;
}

std::vector<FeasibleBand> feasible_bands(const SpaceTable& table) {
    std::vector<FeasibleBand> out;
    bool open = false;
    for (const auto& row : table.rows) {
        if (out.empty() || out.back().k != row.k) {
            out.push_back({row.k, {}});
            open = false;
        }
        auto& band = out.back();
        const bool ok = row.feasibility && row.feasibility->feasible;
        if (ok && open) band.intervals.back().second = row.m;
        else if (ok) band.intervals.emplace_back(row.m, row.m);
        open = ok;
    }
    return out;
}

namespace {

std::string g6(double v) { return fmt::format("{:.6g}", v); }

std::string opt_num(bool valid, double v) { return valid ? g6(v) : std::string("nan"); }

}  // namespace

void write_space_csv(std::ostream& os, const SpaceTable& t) {
    os << "m,k,theta_alpha_deg,theta_beta_deg,phi1_deg,phi2_deg,z_alpha_ohm,z_beta_ohm,converged,"
          "residual_dualband,residual_impedance";
    if (t.figure == SpaceFigure::impedances) os << ",impedance_in_range";
    std::vector<std::string> shifter_cols;
    if (t.figure == SpaceFigure::shifter && t.topology) {
        switch (*t.topology) {
            case Topology::c_section: shifter_cols = {"theta_delta_deg", "z_even_ohm", "z_odd_ohm"}; break;
            case Topology::pi: shifter_cols = {"theta_1pi_deg", "theta_2pi_deg", "z_1pi_ohm", "z_2pi_ohm"}; break;
            case Topology::t: shifter_cols = {"theta_1t_deg", "theta_2t_deg", "z_1t_ohm", "z_2t_ohm"}; break;
            case Topology::ideal_tl: shifter_cols = {"theta_line_deg", "z_line_ohm"}; break;
        }
        for (const auto& c : shifter_cols) os << ',' << c;
        os << ",feasible";
    }
    os << '\n';
    for (const auto& r : t.rows) {
        const bool c = r.converged, p = r.phases_valid;
        os << g6(r.m) << ',' << g6(r.k) << ',' << opt_num(c, rad_to_deg(r.ring.theta_alpha)) << ','
           << opt_num(c, rad_to_deg(r.ring.theta_beta)) << ',' << opt_num(p, rad_to_deg(r.ring.phi1))
           << ',' << opt_num(p, rad_to_deg(r.ring.phi2)) << ',' << opt_num(p, r.ring.z_alpha) << ','
           << opt_num(p, r.ring.z_beta) << ',' << (c ? "true" : "false") << ','
           << fmt::format("{:.3e}", c ? r.ring.residual_dualband : std::nan("")) << ','
           << fmt::format("{:.3e}", p ? r.ring.residual_impedance : std::nan(""));
        if (t.figure == SpaceFigure::impedances) os << ',' << (p && r.impedance_in_range ? "true" : "false");
        if (t.figure == SpaceFigure::shifter && t.topology) {
            std::vector<double> vals;
            if (r.shifter) {
                std::visit(
                    [&](const auto& s) {
                        using S = std::decay_t<decltype(s)>;
                        if constexpr (std::is_same_v<S, CSection>)
                            vals = {rad_to_deg(s.theta_delta), s.z_even, s.z_odd};
                        else if constexpr (std::is_same_v<S, PiStructure>)
                            vals = {rad_to_deg(s.theta_1pi), rad_to_deg(s.theta_2pi), s.z_1pi, s.z_2pi};
                        else if constexpr (std::is_same_v<S, TStructure>)
                            vals = {rad_to_deg(s.theta_1t), rad_to_deg(s.theta_2t), s.z_1t, s.z_2t};
                        else
                            vals = {rad_to_deg(s.theta), s.z};
                    },
                    *r.shifter);
            }
            for (std::size_t i = 0; i < shifter_cols.size(); ++i)
                os << ',' << (i < vals.size() ? g6(vals[i]) : std::string("nan"));
            os << ',' << (r.feasibility && r.feasibility->feasible ? "true" : "false");
        }
        os << '\n';
    }
}

}  // namespace ringdesign
