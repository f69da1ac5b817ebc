#pragma once

// Multiport simulation by nodal admittance assembly. Every branch is stamped
// on its node pair, ground is the reference, internal nodes are removed by a
// Schur complement and the port admittance matrix is converted to S.

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringdesign/elements.hpp"
#include "ringdesign/types.hpp"

namespace ringdesign {

using CMatrix = Eigen::MatrixXcd;

struct SMatrix {
    CMatrix s;                     // N x N, port order as in Network::ports
    std::vector<double> port_z0;  // real reference impedances
    double frequency = 0.0;

    cplx operator()(int to_port, int from_port) const {  // 1-based, S(to, from)
        return s(to_port - 1, from_port - 1);
    }
    int size() const { return static_cast<int>(s.rows()); }
};

/// Full nodal admittance matrix (ground removed), rows in Network::nodes order.
CMatrix nodal_admittance(const Network& net, double f);

/// Port admittance matrix after eliminating internal nodes.
CMatrix port_admittance(const Network& net, double f);

/// S-parameters at a single frequency. Throws EvaluationSingular when an element
/// sits on a pole at f, SingularAssembly when the nodal system is singular.
SMatrix assemble_sparams(const Network& net, double f);

/// Y -> S with real per-port reference impedances.
CMatrix y_to_s(const CMatrix& y, const std::vector<double>& z_ref);
CMatrix s_to_y(const CMatrix& s, const std::vector<double>& z_ref);

/// Re-references an S matrix from z_old to z_new (both real, per port).
CMatrix renormalize(const CMatrix& s, const std::vector<double>& z_old,
                    const std::vector<double>& z_new);

/// True when any element of the network is within pole_tolerance of a pole at f.
bool network_near_pole(const Network& net, double f);

struct SweepPoint {
    double frequency = 0.0;            // requested frequency
    double evaluated_frequency = 0.0;  // differs when nudged off a pole
    bool perturbed = false;
    std::optional<CMatrix> s;          // empty when the point failed
    std::string error;                 // diagnostic for failed points
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::vector<double> port_z0;

    std::size_t size() const { return points.size(); }
};

/// assemble_sparams over the grid. Points on a pole are evaluated at
/// f*(1 + 1e-9) and flagged; failures become gaps instead of aborting.
SweepResult sweep(const Network& net, const FrequencyGrid& grid);

/// Which physical port plays which role (1-based port numbers).
struct RoleMap {
    int input = 1;
    int through = 2;
    int coupled = 3;
    std::optional<int> isolated = 4;  // absent for three-port dividers
};

/// Named metric channels sampled on the sweep frequencies. Values for failed
/// points are NaN.
struct MetricChannels {
    std::vector<double> frequency;
    std::vector<std::string> names;  // fixed order, see extract_metrics
    std::map<std::string, std::vector<double>> values;

    const std::vector<double>& operator[](const std::string& name) const { return values.at(name); }
};

/// Channels, in order:
///   s<i><i>_db                 20 log10 |S_ii| for every port
///   s<t><i>_db, s<c><i>_db     transmission from the input
///   imbalance_db               |S_t,in| - |S_c,in| in dB
///   division_ratio_db          10 log10(|S_c,in|^2 / |S_t,in|^2)
///   phase_diff_deg             arg S_t,in - arg S_c,in, wrapped to (-180, 180]
/// with an isolated port additionally
///   isolated_imbalance_db      |S_t,iso| - |S_c,iso| in dB
///   isolated_phase_diff_deg    arg S_t,iso - arg S_c,iso
///   isolation_db               20 log10 |S_iso,in|
/// and without one (divider)
///   output_isolation_db        20 log10 |S_t,c|
MetricChannels extract_metrics(const SweepResult& sw, const RoleMap& roles);

}  // namespace ringdesign
