#pragma once

// JSON forms of specs, designs, netlists, sweeps and polarization reports.
// Output units: Hz, degrees, ohms, dB. Numbers under keys ending in _deg or
// _ohm are written with 6 significant digits, _hz in scientific notation,
// everything else with the shortest round-trip form.

#include <json.hpp>
#include <string>
#include <vector>

#include "ringdesign/design_space.hpp"
#include "ringdesign/network.hpp"
#include "ringdesign/polarization.hpp"
#include "ringdesign/solver.hpp"
#include "ringdesign/targets.hpp"

namespace ringdesign {

using json = nlohmann::json;

/// Deterministic serialization applying the per-key number formats.
std::string dump_json(const json& j, int indent = 2);

/// Parses "balanced" or "n=<value>".
ResistorChoice parse_r_choice(const std::string& s);
std::string r_choice_name(const ResistorChoice& c);

/// Design request: device, f1_hz, f2_hz, n1_db/n2_db or n1/n2, z0_ohm,
/// topology, z_gamma_ohm, r_choice. A design document (with a "spec" member)
/// is accepted too. Throws ParseError for missing or mistyped fields.
struct DesignRequest {
    DesignSpec spec;
    ResistorChoice r_choice;
};
DesignRequest parse_design_request(const json& j);

json spec_to_json(const DesignSpec& s, const ResistorChoice& r_choice);
json solution_to_json(const RingSolution& s);
json shifter_to_json(const ShifterParams& p);
json feasibility_to_json(const FeasibilityReport& f);
json design_to_json(const Design& d, const ResistorChoice& r_choice);
json exactness_to_json(const ExactnessReport& r);

json network_to_json(const Network& net);
Network network_from_json(const json& j);

/// Sweep channels; `max_points` > 0 decimates evenly keeping both ends.
json metrics_to_json(const SweepResult& sw, const MetricChannels& mc, std::size_t max_points = 0);

json space_table_to_json(const SpaceTable& t);
json polarization_to_json(const PolarizationReport& r);

json error_to_json(const std::string& code, const std::string& message);

}  // namespace ringdesign
