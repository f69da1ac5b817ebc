#pragma once

// Parameter sweeps over (m, k) for the length, phase/impedance and shifter
// figures. Non-converged cells are flagged rather than raised.

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ringdesign/shifter.hpp"
#include "ringdesign/solver.hpp"

namespace ringdesign {

enum class SpaceFigure { lengths, impedances, shifter };

std::string_view space_figure_name(SpaceFigure f) noexcept;
SpaceFigure parse_space_figure(std::string_view s);

/// Inclusive grid start, start + step, ... up to stop (with a half-step tolerance).
std::vector<double> m_grid(double start, double stop, double step);

/// Band of impedances outside which an impedance-figure cell is flagged.
inline constexpr double sweep_z_min = 5.0;
inline constexpr double sweep_z_max = 500.0;

struct SpaceRow {
    double m = 0.0;
    double k = 0.0;
    bool converged = false;       // electrical lengths solved on the branch
    bool phases_valid = false;    // phases and impedances evaluated
    bool impedance_in_range = false;
    RingSolution ring;            // angles in radians
    std::optional<ShifterParams> shifter;
    std::optional<FeasibilityReport> feasibility;
    std::string error;            // reason when a stage failed
};

struct SpaceTable {
    SpaceFigure figure = SpaceFigure::lengths;
    double n1 = 1.0;
    double z0 = 50.0;
    std::optional<Topology> topology;
    std::vector<SpaceRow> rows;  // ordered by (k, m)
};

/// Table of (theta_alpha, theta_beta) over (m, k). Phases and impedances are
/// evaluated too, at n1 = 1 and z0 = 50.
SpaceTable sweep_lengths(const std::vector<double>& m_values, const std::vector<double>& k_set,
                         const SolverOptions& opts = {});

SpaceTable sweep_impedances(const std::vector<double>& m_values, const std::vector<double>& k_set,
                            double n1, double z0, const SolverOptions& opts = {});

/// Shifter parameters with Z_gamma = Z_alpha(m, k, n1) and a feasibility verdict.
SpaceTable sweep_shifter(Topology topology, const std::vector<double>& m_values,
                         const std::vector<double>& k_set, double n1, double z0,
                         const ImpedanceWindow& window = {}, const SolverOptions& opts = {});

/// Maximal runs of consecutive feasible rows for one k, as [m_first, m_last].
struct FeasibleBand {
    double k = 0.0;
    std::vector<std::pair<double, double>> intervals;
};
std::vector<FeasibleBand> feasible_bands(const SpaceTable& table);

/// Columns m,k,theta_alpha_deg,theta_beta_deg,phi1_deg,phi2_deg,z_alpha_ohm,
/// z_beta_ohm,converged followed by residuals and figure-specific columns.
void write_space_csv(std::ostream& os, const SpaceTable& table);

}  // namespace ringdesign
