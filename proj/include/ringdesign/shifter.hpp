#pragma once

// Dual-band quarter-wave equivalents: C-section, Pi- and T-structures whose
// electrical length at f1 is pi/(m+1), so they act as a Z_gamma line of
// +-90 degrees at both f1 and m*f1.

#include <limits>
#include <string>
#include <vector>

#include "ringdesign/types.hpp"

namespace ringdesign {

/// Distance from a vanishing denominator (in radians) treated as singular.
inline constexpr double synthesis_singularity_tol = 1e-9;

CSection synth_c_section(double m, double z_gamma);
PiStructure synth_pi(double m, double z_gamma);
TStructure synth_t(double m, double z_gamma);

/// Quarter-wave line at f1, used by the ideal-TL reference topology.
IdealLine synth_ideal_line(double z_gamma);

ShifterParams synthesize_shifter(Topology topology, double m, double z_gamma);

struct ImpedanceWindow {
    double z_min = 20.0;
    double z_max = 150.0;
};

struct ImpedanceCheck {
    std::string name;  // e.g. "z_even"
    double value = 0.0;
    bool in_window = false;
};

struct FeasibilityReport {
    std::vector<ImpedanceCheck> impedances;
    bool feasible = true;
    std::string advisory;  // frequency-ratio guidance for the topology
};

/// Named impedances of a shifter in a fixed order, e.g. {z_even, z_odd}.
std::vector<std::pair<std::string, double>> shifter_impedances(const ShifterParams& p);

FeasibilityReport check_feasibility(const ShifterParams& params, const ImpedanceWindow& window);

/// Frequency-ratio interval over which each topology is commonly practical
/// with a 50-ohm system: C 2-2.75, Pi 2.25-2.9, T 1.75-2.25.
std::string topology_guidance(Topology t);

}  // namespace ringdesign
