#pragma once

// Dual-band ring design: solves the electrical-length conditions for the
// coupler ring, then derives the transmission phases and line impedances.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringdesign/shifter.hpp"
#include "ringdesign/types.hpp"

namespace ringdesign {

struct SolverOptions {
    double tol = 1e-12;  // max absolute residual of the two length conditions
    int max_iter = 100;  // Newton iterations per continuation step
    int grid_n = 721;    // fallback scan resolution per axis
    double jacobian_step = 1e-7;
};

struct ElectricalLengths {
    double theta_alpha = 0.0;
    double theta_beta = 0.0;
    double residual = 0.0;  // max |r1|, |r2|
    bool used_grid_fallback = false;
};

/// Residuals of the two dual-band length conditions at (theta_alpha, theta_beta).
/// r1 = sin(m tb)/sin(tb) - sqrt(k) sin(m ta)/sin(ta)
/// r2 = cos(m(ta-tb))/cos(ta-tb) - cos(m(ta+tb))/cos(ta+tb)
std::pair<double, double> dualband_residuals(double theta_alpha, double theta_beta, double m,
                                             double k);

/// Solves for (theta_alpha, theta_beta) on the branch continuously connected to the
/// k = 1 closed form pi/(1+m). Throws NoSolutionFound or SingularPoint.
ElectricalLengths solve_electrical_lengths(double m, double k, const SolverOptions& opts = {});

/// Same, but starts Newton from a caller-supplied neighbouring solution (used by
/// parameter sweeps walking along m). Falls back to the full solve on failure.
ElectricalLengths solve_electrical_lengths_from(double m, double k, double theta_alpha_guess,
                                                double theta_beta_guess,
                                                const SolverOptions& opts = {});

/// Transmission phases at f1 and f2, principal arccos values in (0, pi).
/// Throws PhaseOutOfRange or DegeneratePhase.
std::pair<double, double> compute_phase_shifts(double theta_alpha, double theta_beta, double m,
                                               double n1, double n2);

struct RingImpedances {
    double z_alpha = 0.0;
    double z_beta = 0.0;
    double residual_impedance = 0.0;  // relative disagreement between the f1 and f2 forms
};

/// Ring line impedances from the f1 expressions; the f2 expressions feed the
/// consistency residual. Throws SingularLength or NegativeImpedance.
RingImpedances compute_ring_impedances(double theta_alpha, double theta_beta, double phi1,
                                       double phi2, double m, double n1, double n2, double z0);

/// Full ring solution for (m, n1, n2, z0).
RingSolution solve_ring(double m, double n1, double n2, double z0, const SolverOptions& opts = {});

struct IsolationResistors {
    double r2 = 0.0;
    double r3 = 0.0;
};

/// How the divider's isolation resistors are chosen. `explicit_n` applies
/// R2 = (n+1) z0, R3 = (n+1)/n z0; balanced uses R2 = R3 = 2 z0.
struct ResistorChoice {
    enum class Kind { balanced, explicit_n } kind = Kind::balanced;
    double n = 1.0;

    static ResistorChoice balanced() { return {}; }
    static ResistorChoice explicit_ratio(double n) { return {Kind::explicit_n, n}; }
};

IsolationResistors choose_isolation_resistors(double z0, const ResistorChoice& choice);

struct Design {
    DesignSpec spec;
    RingSolution ring;
    ShifterParams shifter;
    double z_gamma = 0.0;
    std::optional<IsolationResistors> resistors;  // set for dividers
    FeasibilityReport feasibility;
    std::vector<std::string> warnings;  // realizability warnings; never fatal
};

/// Coupler design: ring solve, then shifter synthesis with Z_gamma = Z_alpha.
Design design_rrc(const DesignSpec& spec, const SolverOptions& opts = {},
                  const ImpedanceWindow& window = {});

/// Divider design: same ring, shifter at spec.z_gamma (default z0), plus resistors.
Design design_gpd(const DesignSpec& spec, const SolverOptions& opts = {},
                  ResistorChoice r_choice = ResistorChoice::balanced(),
                  const ImpedanceWindow& window = {});

/// Dispatches on spec.device.
Design design(const DesignSpec& spec, const SolverOptions& opts = {},
              ResistorChoice r_choice = ResistorChoice::balanced(),
              const ImpedanceWindow& window = {});

/// Maps a solution at (n1, k) to the one at (1/n1, 1/k): the ring lengths and
/// impedances swap roles, the phases are unchanged.
RingSolution interchange_symmetry_map(const RingSolution& s);

}  // namespace ringdesign
