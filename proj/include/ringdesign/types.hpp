#pragma once

// Domain value types shared by the solver, synthesis, and simulation layers.
// Internal units are Hz, ohms and radians; degrees and dB appear only at I/O.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ringdesign {

enum class Topology { c_section, pi, t, ideal_tl };
enum class Device { rrc, gpd };

std::string_view topology_name(Topology t) noexcept;  // "c", "pi", "t", "tl"
Topology parse_topology(std::string_view s);           // accepts c|pi|t|tl and long forms
std::string_view device_name(Device d) noexcept;       // "rrc", "gpd"
Device parse_device(std::string_view s);

/// Upper bound on f2/f1 accepted by the spec constructors.
inline constexpr double max_frequency_ratio = 10.0;

struct DesignSpec {
    double f1 = 0.0;  // Hz
    double f2 = 0.0;  // Hz, > f1
    double n1 = 1.0;  // linear power-division ratio |S31|^2/|S21|^2 at f1
    double n2 = 1.0;  // same at f2
    double z0 = 50.0;
    // Reference impedance of the phase shifters. Unset means the device default:
    // the solved Z_alpha for a coupler, z0 for a divider.
    std::optional<double> z_gamma;
    Topology topology = Topology::c_section;
    Device device = Device::rrc;

    double m() const { return f2 / f1; }
    double k() const { return n2 / n1; }
};

/// Validating constructor taking linear ratios.
DesignSpec make_spec(Device device, double f1, double f2, double n1, double n2, double z0,
                     Topology topology, std::optional<double> z_gamma = std::nullopt);

/// Coupler spec with ratios in dB (n = 10^(dB/10)).
DesignSpec make_rrc_spec(double f1, double f2, double n1_db, double n2_db, double z0,
                         Topology topology);

/// Divider spec with ratios in dB.
DesignSpec make_gpd_spec(double f1, double f2, double n1_db, double n2_db, double z0,
                         Topology topology, std::optional<double> z_gamma = std::nullopt);

/// Solved ring parameters; all angles are at f1.
struct RingSolution {
    double theta_alpha = 0.0;
    double theta_beta = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
    double z_alpha = 0.0;
    double z_beta = 0.0;
    double residual_dualband = 0.0;
    double residual_impedance = 0.0;
};

struct CSection {
    double theta_delta = 0.0;
    double z_even = 0.0;
    double z_odd = 0.0;
};

struct PiStructure {
    double theta_1pi = 0.0;
    double theta_2pi = 0.0;
    double z_1pi = 0.0;
    double z_2pi = 0.0;
};

struct TStructure {
    double theta_1t = 0.0;
    double theta_2t = 0.0;
    double z_1t = 0.0;
    double z_2t = 0.0;
};

/// Plain quarter-wave line at f1; only exact at the first band.
struct IdealLine {
    double theta = 0.0;
    double z = 0.0;
};

using ShifterParams = std::variant<CSection, PiStructure, TStructure, IdealLine>;

Topology shifter_topology(const ShifterParams& p) noexcept;

// Circuit elements. Electrical lengths are stored at f1 and scale linearly
// with frequency; characteristic impedances are frequency independent.

struct TLSection {
    double z = 0.0;
    double theta_at_f1 = 0.0;
};

/// Open-circuited stub, connected between its node and the return node.
struct OpenStub {
    double z = 0.0;
    double theta_at_f1 = 0.0;
};

/// Coupled-line pair with the far ends joined (Schiffman section).
struct CSectionElement {
    double z_even = 0.0;
    double z_odd = 0.0;
    double theta_at_f1 = 0.0;
};

struct ShuntResistor {
    double r = 0.0;
};

using Element = std::variant<TLSection, OpenStub, CSectionElement, ShuntResistor>;

/// True for elements that connect two nodes as a two-port (TL, C-section).
bool is_two_port(const Element& e) noexcept;

/// Electrical length of an element at frequency f (0 for resistors).
double electrical_length(const Element& e, double f, double f1);

inline constexpr std::string_view ground_node = "0";

struct Port {
    std::string node;
    double z0 = 50.0;
};

/// Two-port elements span `from`/`to`, both referenced to ground. One-port
/// elements (stub, resistor) sit between `from` and `to`; `to` is usually ground.
struct Branch {
    Element element;
    std::string from;
    std::string to = std::string(ground_node);
};

struct Network {
    std::vector<std::string> nodes;  // excludes ground
    std::vector<Port> ports;
    std::vector<Branch> branches;
    double f1_hz = 1.0e9;

    /// Adds a node if it is not already present.
    void add_node(const std::string& id);
    void add_branch(Element e, const std::string& from, const std::string& to = std::string(ground_node));
    void add_port(const std::string& node, double z0);
};

/// Checks node references, port uniqueness and connectivity; throws InvalidNetwork.
void validate_network(const Network& net);

struct FrequencyGrid {
    std::vector<double> points;

    static FrequencyGrid linear(double fstart, double fstop, int count);
    static FrequencyGrid single(double f);
};

void validate_grid(const FrequencyGrid& grid);

}  // namespace ringdesign
