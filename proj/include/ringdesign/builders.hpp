#pragma once

// Netlists for the coupler (four ports) and the Gysel divider (three ports),
// plus stand-alone shifter and isolation-circuit two-ports.

#include <string>

#include "ringdesign/elements.hpp"
#include "ringdesign/network.hpp"
#include "ringdesign/solver.hpp"
#include "ringdesign/types.hpp"

namespace ringdesign {

/// Appends one dual-band 90-degree section between `from` and `to`. Internal
/// nodes are named `<prefix>.<n>`.
void append_shifter(Network& net, const ShifterParams& shifter, const std::string& from,
                    const std::string& to, const std::string& prefix);

/// Appends the 180-degree section of the divider (two cascaded shifters with
/// the centre stubs or centre lines merged where the topology allows it).
void append_half_wave(Network& net, const ShifterParams& shifter, const std::string& from,
                      const std::string& to, const std::string& prefix);

/// Ring coupler. Ports p1..p4: p1-p3 {Za, ta}, p1-p2 and p3-p4 {Zb, tb},
/// p2-p4 through shifter, {Za, ta}, shifter.
Network build_rrc_network(const RingSolution& solution, const ShifterParams& shifter,
                          double z0 = 50.0, double f1 = 1.0e9);

/// Gysel divider. p1-p3 {Za, ta}, p1-p2 {Zb, tb}; isolation ring
/// p2 -{Za, ta}- r2 -180 deg- r3 -{Zb, tb}- p3 with R2, R3 to ground.
Network build_gpd_network(const RingSolution& solution, const ShifterParams& shifter,
                          const IsolationResistors& resistors, double z0 = 50.0,
                          double f1 = 1.0e9);

/// Network for a completed design (dispatches on the device).
Network build_network(const Design& d);

/// One shifter between two ports of reference impedance z_ref.
Network build_shifter_network(const ShifterParams& shifter, double z_ref, double f1 = 1.0e9);

/// Chain matrix of one shifter, cascaded from its element chain matrices.
TwoPortMatrix shifter_two_port(const ShifterParams& shifter, double f, double f1);

/// Isolation circuits as two-ports between the port-2 side and the port-3
/// side. The 180-degree section is an ideal phase inverter (chain matrix -I).
/// Coupler form: {Za, ta} - inverter - Z0 to ground - {Zb, tb}.
TwoPortMatrix isolation_circuit_rrc(double z_alpha, double theta_alpha, double z_beta,
                                    double theta_beta, double z0, double f, double f1);
/// Divider form: {Za, ta} - R2 to ground - inverter - R3 to ground - {Zb, tb}.
TwoPortMatrix isolation_circuit_gpd(double z_alpha, double theta_alpha, double z_beta,
                                    double theta_beta, double r2, double r3, double f, double f1);

}  // namespace ringdesign
