#pragma once

// Ideal scattering matrices at the design frequencies and the check of a
// simulated network against them.

#include <optional>
#include <vector>

#include "ringdesign/network.hpp"
#include "ringdesign/solver.hpp"

namespace ringdesign {

/// Four-port coupler target: e^{-j phi}/sqrt(1+n) [[0,1,r,0],[1,0,0,-r],[r,0,0,1],[0,-r,1,0]], r = sqrt(n).
CMatrix rrc_target(double n, double phi);

/// Three-port divider target: e^{-j phi}/sqrt(1+n) [[0,1,r],[1,0,0],[r,0,0]].
CMatrix gpd_target(double n, double phi);

struct BandCheck {
    double frequency = 0.0;
    double max_entry_error = 0.0;  // max |S - target| with the phase taken from S21
    double phase_error_deg = 0.0;  // wrapped (-arg S21) - phi
    double s11_db = 0.0;
    std::optional<double> s23_db;  // divider output isolation
};

struct ExactnessReport {
    std::vector<BandCheck> bands;  // f1, then f2 when the topology is dual-band
    double max_entry_error = 0.0;
};

/// Compares a simulated S matrix to the target with phase removed via arg S21.
double target_error(const CMatrix& s, const CMatrix& target_zero_phase);

/// Simulates the design's netlist at f1 and f2 and compares with the targets.
/// The ideal-TL topology is only exact at f1, so f2 is skipped for it.
ExactnessReport check_exactness(const Design& d);

}  // namespace ringdesign
