#include "ringdesign/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "ringdesign/error.hpp"
#include "ringdesign/units.hpp"

namespace ringdesign {

namespace {

// Reciprocal condition number below which a nodal block counts as singular.
constexpr double min_rcond = 1e-13;
constexpr double pole_nudge = 1e-9;

[[noreturn]] void throw_singular(double f, const std::string& what) {
    std::ostringstream os;
    os.precision(12);
    os << what << " at " << f << " Hz";
    throw Error(ErrorCode::singular_assembly, os.str());
}

}  // namespace

CMatrix nodal_admittance(const Network& net, double f) {
    if (!(f > 0.0)) throw Error(ErrorCode::non_positive_frequency, "frequency must be > 0");
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < net.nodes.size(); ++i) index[net.nodes[i]] = static_cast<int>(i);
    auto idx = [&](const std::string& id) -> int {
        if (id == ground_node) return -1;
        auto it = index.find(id);
        if (it == index.end()) throw Error(ErrorCode::invalid_network, "unknown node '" + id + "'");
        return it->second;
    };

    const int n = static_cast<int>(net.nodes.size());
    CMatrix y = CMatrix::Zero(n, n);
    for (const auto& br : net.branches) {
        const int a = idx(br.from);
        const int b = idx(br.to);
        if (is_two_port(br.element)) {
            // Both terminals referenced to ground.
            const YParams p = element_y_params(br.element, f, net.f1_hz);
            y(a, a) += p.y11;
            y(b, b) += p.y22;
            y(a, b) += p.y12;
            y(b, a) += p.y21;
        } else {
            const cplx adm = element_admittance(br.element, f, net.f1_hz);
            if (a >= 0) y(a, a) += adm;
            if (b >= 0) y(b, b) += adm;
            if (a >= 0 && b >= 0) {
                y(a, b) -= adm;
                y(b, a) -= adm;
            }
        }
    }
    return y;
}

CMatrix port_admittance(const Network& net, double f) {
    const CMatrix y = nodal_admittance(net, f);
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < net.nodes.size(); ++i) index[net.nodes[i]] = static_cast<int>(i);

    std::vector<int> ports, internal;
    std::vector<bool> is_port(net.nodes.size(), false);
    for (const auto& p : net.ports) {
        const int i = index.at(p.node);
        ports.push_back(i);
        is_port[static_cast<std::size_t>(i)] = true;
    }
    for (std::size_t i = 0; i < net.nodes.size(); ++i)
        if (!is_port[i]) internal.push_back(static_cast<int>(i));

    const int np = static_cast<int>(ports.size());
    const int ni = static_cast<int>(internal.size());
    CMatrix ypp(np, np), ypi(np, ni), yip(ni, np), yii(ni, ni);
    for (int r = 0; r < np; ++r) {
        for (int c = 0; c < np; ++c) ypp(r, c) = y(ports[r], ports[c]);
        for (int c = 0; c < ni; ++c) ypi(r, c) = y(ports[r], internal[c]);
    }
    for (int r = 0; r < ni; ++r) {
        for (int c = 0; c < np; ++c) yip(r, c) = y(internal[r], ports[c]);
        for (int c = 0; c < ni; ++c) yii(r, c) = y(internal[r], internal[c]);
    }
    if (ni == 0) return ypp;

    Eigen::PartialPivLU<CMatrix> lu(yii);
    if (!(lu.rcond() > min_rcond)) throw_singular(f, "internal-node admittance block is singular");
    CMatrix reduced = ypp - ypi * lu.solve(yip);
    if (!reduced.allFinite()) throw_singular(f, "port admittance is not finite");
    return reduced;
}

CMatrix y_to_s(const CMatrix& y, const std::vector<double>& z_ref) {
    const auto n = y.rows();
    Eigen::VectorXd sq(n);
    for (Eigen::Index i = 0; i < n; ++i) sq(i) = std::sqrt(z_ref[static_cast<std::size_t>(i)]);
    const CMatrix yn = sq.asDiagonal() * y * sq.asDiagonal();
    const CMatrix id = CMatrix::Identity(n, n);
    return (id + yn).partialPivLu().solve(id - yn);
}

CMatrix s_to_y(const CMatrix& s, const std::vector<double>& z_ref) {
    const auto n = s.rows();
    Eigen::VectorXd inv_sq(n);
    for (Eigen::Index i = 0; i < n; ++i) inv_sq(i) = 1.0 / std::sqrt(z_ref[static_cast<std::size_t>(i)]);
    const CMatrix id = CMatrix::Identity(n, n);
    const CMatrix yn = (id + s).partialPivLu().solve(id - s);
    return inv_sq.asDiagonal() * yn * inv_sq.asDiagonal();
}

CMatrix renormalize(const CMatrix& s, const std::vector<double>& z_old,
                    const std::vector<double>& z_new) {
    if (z_old == z_new) return s;
    return y_to_s(s_to_y(s, z_old), z_new);
}

namespace {

// S from the port-terminated nodal system (Y + G) V = I, G = 1/z0 on port nodes.
// Equivalent to the Schur route but does not need the internal block to be
// invertible on its own (e.g. a node between two quarter-wave lines at f1).
CMatrix terminated_sparams(const Network& net, double f, const std::vector<double>& z_ref) {
    CMatrix y = nodal_admittance(net, f);
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < net.nodes.size(); ++i) index[net.nodes[i]] = static_cast<int>(i);
    const auto np = static_cast<Eigen::Index>(net.ports.size());
    CMatrix rhs = CMatrix::Zero(y.rows(), np);
    std::vector<int> port_rows;
    for (Eigen::Index p = 0; p < np; ++p) {
        const int r = index.at(net.ports[static_cast<std::size_t>(p)].node);
        port_rows.push_back(r);
        y(r, r) += 1.0 / z_ref[static_cast<std::size_t>(p)];
        rhs(r, p) = 1.0;
    }
    Eigen::PartialPivLU<CMatrix> lu(y);
    if (!(lu.rcond() > min_rcond)) throw_singular(f, "terminated nodal matrix is singular");
    const CMatrix v = lu.solve(rhs);
    CMatrix s(np, np);
    for (Eigen::Index r = 0; r < np; ++r)
        for (Eigen::Index c = 0; c < np; ++c)
            s(r, c) = 2.0 * v(port_rows[static_cast<std::size_t>(r)], c) /
                          std::sqrt(z_ref[static_cast<std::size_t>(r)] * z_ref[static_cast<std::size_t>(c)]) -
                      (r == c ? 1.0 : 0.0);
    return s;
}

}  // namespace

SMatrix assemble_sparams(const Network& net, double f) {
    SMatrix out;
    out.frequency = f;
    for (const auto& p : net.ports) out.port_z0.push_back(p.z0);
    try {
        out.s = y_to_s(port_admittance(net, f), out.port_z0);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::singular_assembly) throw;
        out.s = terminated_sparams(net, f, out.port_z0);
    }
    if (!out.s.allFinite()) throw_singular(f, "scattering matrix is not finite");
    return out;
}

bool network_near_pole(const Network& net, double f) {
    for (const auto& br : net.branches)
        if (near_pole(br.element, f, net.f1_hz)) return true;
    return false;
}

SweepResult sweep(const Network& net, const FrequencyGrid& grid) {
    validate_network(net);
    validate_grid(grid);
    SweepResult out;
    for (const auto& p : net.ports) out.port_z0.push_back(p.z0);
    out.points.reserve(grid.points.size());

    for (double f : grid.points) {
        SweepPoint pt;
        pt.frequency = f;
        double fe = f;
        // Nudge off element poles; a few steps covers poles of several elements.
        for (int attempt = 0; attempt < 8 && network_near_pole(net, fe); ++attempt) {
            fe *= 1.0 + pole_nudge;
            pt.perturbed = true;
        }
        try {
            pt.s = assemble_sparams(net, fe).s;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::singular_assembly && !pt.perturbed) {
                // Internal resonance exactly on the grid point; same treatment as a pole.
                fe *= 1.0 + pole_nudge;
                pt.perturbed = true;
                try {
                    pt.s = assemble_sparams(net, fe).s;
                } catch (const Error& e2) {
                    pt.error = e2.what();
                }
            } else {
                pt.error = e.what();
            }
        }
        pt.evaluated_frequency = fe;
        out.points.push_back(std::move(pt));
    }
    return out;
}

namespace {

double db20(cplx v) { return 20.0 * std::log10(std::max(std::abs(v), 1e-20)); }

}  // namespace

MetricChannels extract_metrics(const SweepResult& sw, const RoleMap& roles) {
    const int n = static_cast<int>(sw.port_z0.size());
    auto valid = [n](int p) { return p >= 1 && p <= n; };
    if (!valid(roles.input) || !valid(roles.through) || !valid(roles.coupled) ||
        (roles.isolated && !valid(*roles.isolated)))
        throw Error(ErrorCode::role_map_invalid, "role map names a port outside the network");
    std::vector<int> used{roles.input, roles.through, roles.coupled};
    if (roles.isolated) used.push_back(*roles.isolated);
    for (std::size_t i = 0; i < used.size(); ++i)
        for (std::size_t k = i + 1; k < used.size(); ++k)
            if (used[i] == used[k]) throw Error(ErrorCode::role_map_invalid, "role map repeats a port");

    MetricChannels mc;
    const int in = roles.input - 1, th = roles.through - 1, cp = roles.coupled - 1;
    const std::string s_th = "s" + std::to_string(roles.through) + std::to_string(roles.input) + "_db";
    const std::string s_cp = "s" + std::to_string(roles.coupled) + std::to_string(roles.input) + "_db";
    for (int p = 1; p <= n; ++p) mc.names.push_back("s" + std::to_string(p) + std::to_string(p) + "_db");
    mc.names.insert(mc.names.end(),
                    {s_th, s_cp, "imbalance_db", "division_ratio_db", "phase_diff_deg"});
    if (roles.isolated)
        mc.names.insert(mc.names.end(),
                        {"isolated_imbalance_db", "isolated_phase_diff_deg", "isolation_db"});
    else
        mc.names.push_back("output_isolation_db");
    for (const auto& name : mc.names) mc.values[name].reserve(sw.size());

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& pt : sw.points) {
        mc.frequency.push_back(pt.frequency);
        if (!pt.s) {
            for (const auto& name : mc.names) mc.values[name].push_back(nan);
            continue;
        }
        const CMatrix& s = *pt.s;
        for (int p = 0; p < n; ++p)
            mc.values[mc.names[static_cast<std::size_t>(p)]].push_back(db20(s(p, p)));
        mc.values[s_th].push_back(db20(s(th, in)));
        mc.values[s_cp].push_back(db20(s(cp, in)));
        mc.values["imbalance_db"].push_back(db20(s(th, in)) - db20(s(cp, in)));
        mc.values["division_ratio_db"].push_back(db20(s(cp, in)) - db20(s(th, in)));
        mc.values["phase_diff_deg"].push_back(
            wrap_deg(rad_to_deg(std::arg(s(th, in)) - std::arg(s(cp, in)))));
        if (roles.isolated) {
            const int iso = *roles.isolated - 1;
            mc.values["isolated_imbalance_db"].push_back(db20(s(th, iso)) - db20(s(cp, iso)));
            mc.values["isolated_phase_diff_deg"].push_back(
                wrap_deg(rad_to_deg(std::arg(s(th, iso)) - std::arg(s(cp, iso)))));
            mc.values["isolation_db"].push_back(db20(s(iso, in)));
        } else {
            mc.values["output_isolation_db"].push_back(db20(s(th, cp)));
        }
    }
    return mc;
}

}  // namespace ringdesign
