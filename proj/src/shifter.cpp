#include "ringdesign/shifter.hpp"

#include <cmath>
#include <sstream>

#include "ringdesign/error.hpp"
#include "ringdesign/units.hpp"

namespace ringdesign {

namespace {

double quarter_wave_length(double m) {
    if (!(m > 1.0) || !std::isfinite(m))
        throw Error(ErrorCode::ratio_out_of_range, "shifter synthesis needs m > 1");
    return pi / (m + 1.0);
}

void check_z_gamma(double z_gamma) {
    if (!(z_gamma > 0.0) || !std::isfinite(z_gamma))
        throw Error(ErrorCode::invalid_argument, "z_gamma must be positive");
}

}  // namespace

CSection synth_c_section(double m, double z_gamma) {
    check_z_gamma(z_gamma);
    const double theta = quarter_wave_length(m);
    if (std::abs(theta - pi / 2.0) < synthesis_singularity_tol)
        throw Error(ErrorCode::singular_synthesis, "C-section degenerates as m -> 1");
    const double t = std::tan(theta);
    return CSection{theta, z_gamma * t, z_gamma / t};
}

PiStructure synth_pi(double m, double z_gamma) {
    check_z_gamma(z_gamma);
    const double theta = quarter_wave_length(m);
    if (std::abs(theta - pi / 2.0) < synthesis_singularity_tol)
        throw Error(ErrorCode::singular_synthesis, "Pi-structure stub impedance diverges as m -> 1");
    const double z1 = z_gamma / std::sin(theta);
    const double z2 = z_gamma * std::tan(theta) / std::cos(theta);
    return PiStructure{theta, theta, z1, z2};
}

TStructure synth_t(double m, double z_gamma) {
    check_z_gamma(z_gamma);
    const double theta = quarter_wave_length(m);
    if (std::abs(2.0 * theta - pi / 2.0) < synthesis_singularity_tol)
        throw Error(ErrorCode::singular_synthesis,
                    "T-structure stub impedance diverges at m = 3 (cos 2*theta = 0)");
    if (std::abs(theta - pi / 2.0) < synthesis_singularity_tol)
        throw Error(ErrorCode::singular_synthesis, "T-structure degenerates as m -> 1");
    const double c = std::cos(theta);
    const double z1 = z_gamma / std::tan(theta);
    const double z2 = z_gamma * c * c * std::tan(2.0 * theta) / std::cos(2.0 * theta);
    if (!(z2 > 0.0))
        throw Error(ErrorCode::singular_synthesis,
                    "T-structure stub impedance is negative for m > 3");
    return TStructure{theta, 2.0 * theta, z1, z2};
}

IdealLine synth_ideal_line(double z_gamma) {
    check_z_gamma(z_gamma);
    return IdealLine{pi / 2.0, z_gamma};
}

ShifterParams synthesize_shifter(Topology topology, double m, double z_gamma) {
    switch (topology) {
        case Topology::c_section: return synth_c_section(m, z_gamma);
        case Topology::pi: return synth_pi(m, z_gamma);
        case Topology::t: return synth_t(m, z_gamma);
        case Topology::ideal_tl: return synth_ideal_line(z_gamma);
    }
    throw Error(ErrorCode::topology_mismatch, "unknown topology");
}

std::vector<std::pair<std::string, double>> shifter_impedances(const ShifterParams& p) {
    struct Visitor {
        std::vector<std::pair<std::string, double>> operator()(const CSection& c) const {
            return {{"z_even", c.z_even}, {"z_odd", c.z_odd}};
        }
        std::vector<std::pair<std::string, double>> operator()(const PiStructure& s) const {
            return {{"z_1pi", s.z_1pi}, {"z_2pi", s.z_2pi}};
        }
        std::vector<std::pair<std::string, double>> operator()(const TStructure& s) const {
            return {{"z_1t", s.z_1t}, {"z_2t", s.z_2t}};
        }
        std::vector<std::pair<std::string, double>> operator()(const IdealLine& l) const {
            return {{"z_line", l.z}};
        }
    };
    return std::visit(Visitor{}, p);
}

std::string topology_guidance(Topology t) {
    switch (t) {
        case Topology::c_section:
            return "C-section shifters are practical for roughly 2 <= m <= 2.75";
        case Topology::pi: return "Pi-structure shifters are practical for roughly 2.25 <= m <= 2.9";
        case Topology::t: return "T-structure shifters are practical for roughly 1.75 <= m <= 2.25";
        case Topology::ideal_tl:
            return "a plain quarter-wave line is exact at f1 only; use it as a single-band reference";
    }
    return {};
}

FeasibilityReport check_feasibility(const ShifterParams& params, const ImpedanceWindow& window) {
    if (!(window.z_min <= window.z_max) || window.z_min < 0.0)
        throw Error(ErrorCode::invalid_argument, "impedance window must satisfy 0 <= z_min <= z_max");
    FeasibilityReport report;
    for (auto& [name, z] : shifter_impedances(params)) {
        const bool ok = std::isfinite(z) && z >= window.z_min && z <= window.z_max;
        report.impedances.push_back(ImpedanceCheck{name, z, ok});
        report.feasible = report.feasible && ok;
    }
    std::ostringstream os;
    os << topology_guidance(shifter_topology(params)) << "; realizable window [" << window.z_min
       << ", " << window.z_max << "] ohm";
    report.advisory = os.str();
    return report;
}

}  // namespace ringdesign
