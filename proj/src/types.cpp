#include "ringdesign/types.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "ringdesign/error.hpp"
#include "ringdesign/units.hpp"

namespace ringdesign {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_argument: return "InvalidArgument";
        case ErrorCode::non_positive_frequency: return "NonPositiveFrequency";
        case ErrorCode::ratio_out_of_range: return "RatioOutOfRange";
        case ErrorCode::no_solution_found: return "NoSolutionFound";
        case ErrorCode::singular_point: return "SingularPoint";
        case ErrorCode::phase_out_of_range: return "PhaseOutOfRange";
        case ErrorCode::degenerate_phase: return "DegeneratePhase";
        case ErrorCode::singular_length: return "SingularLength";
        case ErrorCode::negative_impedance: return "NegativeImpedance";
        case ErrorCode::singular_synthesis: return "SingularSynthesis";
        case ErrorCode::evaluation_singular: return "EvaluationSingular";
        case ErrorCode::singular_assembly: return "SingularAssembly";
        case ErrorCode::topology_mismatch: return "TopologyMismatch";
        case ErrorCode::invalid_network: return "InvalidNetwork";
        case ErrorCode::role_map_invalid: return "RoleMapInvalid";
        case ErrorCode::port_invalid: return "PortInvalid";
        case ErrorCode::parse_error: return "ParseError";
    }
    return "Unknown";
}

std::string_view topology_name(Topology t) noexcept {
    switch (t) {
        case Topology::c_section: return "c";
        case Topology::pi: return "pi";
        case Topology::t: return "t";
        case Topology::ideal_tl: return "tl";
    }
    return "?";
}

Topology parse_topology(std::string_view s) {
    if (s == "c" || s == "c_section" || s == "C_SECTION") return Topology::c_section;
    if (s == "pi" || s == "PI") return Topology::pi;
    if (s == "t" || s == "T") return Topology::t;
    if (s == "tl" || s == "ideal_tl" || s == "IDEAL_TL") return Topology::ideal_tl;
    throw Error(ErrorCode::invalid_argument, "unknown topology '" + std::string(s) + "'");
}

std::string_view device_name(Device d) noexcept { return d == Device::rrc ? "rrc" : "gpd"; }

Device parse_device(std::string_view s) {
    if (s == "rrc" || s == "RRC") return Device::rrc;
    if (s == "gpd" || s == "GPD") return Device::gpd;
    throw Error(ErrorCode::invalid_argument, "unknown device '" + std::string(s) + "'");
}

DesignSpec make_spec(Device device, double f1, double f2, double n1, double n2, double z0,
                     Topology topology, std::optional<double> z_gamma) {
    if (!(f1 > 0.0) || !(f2 > 0.0) || !std::isfinite(f1) || !std::isfinite(f2))
        throw Error(ErrorCode::non_positive_frequency, "frequencies must be positive and finite");
    const double m = f2 / f1;
    if (!(m > 1.0) || m > max_frequency_ratio)
        throw Error(ErrorCode::ratio_out_of_range,
                    "frequency ratio m = f2/f1 must lie in (1, 10], got " + std::to_string(m));
    if (!(n1 > 0.0) || !(n2 > 0.0) || !std::isfinite(n1) || !std::isfinite(n2))
        throw Error(ErrorCode::invalid_argument, "power-division ratios must be positive and finite");
    if (!(z0 > 0.0) || !std::isfinite(z0))
        throw Error(ErrorCode::invalid_argument, "port impedance must be positive");
    if (z_gamma && !(*z_gamma > 0.0 && std::isfinite(*z_gamma)))
        throw Error(ErrorCode::invalid_argument, "z_gamma must be positive");

    DesignSpec s;
    s.f1 = f1;
    s.f2 = f2;
    s.n1 = n1;
    s.n2 = n2;
    s.z0 = z0;
    s.z_gamma = z_gamma;
    s.topology = topology;
    s.device = device;
    return s;
}

DesignSpec make_rrc_spec(double f1, double f2, double n1_db, double n2_db, double z0,
                         Topology topology) {
    return make_spec(Device::rrc, f1, f2, db_to_ratio(n1_db), db_to_ratio(n2_db), z0, topology);
}

DesignSpec make_gpd_spec(double f1, double f2, double n1_db, double n2_db, double z0,
                         Topology topology, std::optional<double> z_gamma) {
    return make_spec(Device::gpd, f1, f2, db_to_ratio(n1_db), db_to_ratio(n2_db), z0, topology,
                     z_gamma);
}

Topology shifter_topology(const ShifterParams& p) noexcept {
    switch (p.index()) {
        case 0: return Topology::c_section;
        case 1: return Topology::pi;
        case 2: return Topology::t;
        default: return Topology::ideal_tl;
    }
}

bool is_two_port(const Element& e) noexcept {
    return std::holds_alternative<TLSection>(e) || std::holds_alternative<CSectionElement>(e);
}

double electrical_length(const Element& e, double f, double f1) {
    const double scale = f / f1;
    return std::visit(
        [scale](const auto& el) -> double {
            using T = std::decay_t<decltype(el)>;
            if constexpr (std::is_same_v<T, ShuntResistor>) {
                return 0.0;
            } else {
                return el.theta_at_f1 * scale;
            }
        },
        e);
}

void Network::add_node(const std::string& id) {
    if (id == ground_node) return;
    if (std::find(nodes.begin(), nodes.end(), id) == nodes.end()) nodes.push_back(id);
}

void Network::add_branch(Element e, const std::string& from, const std::string& to) {
    add_node(from);
    add_node(to);
    branches.push_back(Branch{std::move(e), from, to});
}

void Network::add_port(const std::string& node, double z0) {
    add_node(node);
    ports.push_back(Port{node, z0});
}

namespace {

void check_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw Error(ErrorCode::invalid_network, std::string(what) + " must be positive and finite");
}

}  // namespace

void validate_network(const Network& net) {
    std::set<std::string> known(net.nodes.begin(), net.nodes.end());
    if (known.size() != net.nodes.size())
        throw Error(ErrorCode::invalid_network, "duplicate node identifier");
    if (known.count(std::string(ground_node)))
        throw Error(ErrorCode::invalid_network, "ground \"0\" must not be listed as a node");
    if (net.ports.empty()) throw Error(ErrorCode::invalid_network, "network has no ports");
    check_positive(net.f1_hz, "f1_hz");

    std::set<std::string> port_nodes;
    for (const auto& p : net.ports) {
        if (!known.count(p.node))
            throw Error(ErrorCode::invalid_network, "port on unknown node '" + p.node + "'");
        if (!port_nodes.insert(p.node).second)
            throw Error(ErrorCode::invalid_network, "node '" + p.node + "' used by two ports");
        check_positive(p.z0, "port reference impedance");
    }

    // Union-find over non-ground nodes; shunt attachments do not connect anything.
    std::map<std::string, std::string> parent;
    for (const auto& n : net.nodes) parent[n] = n;
    auto find = [&](std::string x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    for (const auto& b : net.branches) {
        for (const auto* id : {&b.from, &b.to}) {
            if (*id != ground_node && !known.count(*id))
                throw Error(ErrorCode::invalid_network, "branch references unknown node '" + *id + "'");
        }
        if (b.from == b.to) throw Error(ErrorCode::invalid_network, "branch shorted onto one node");
        std::visit(
            [](const auto& el) {
                using T = std::decay_t<decltype(el)>;
                if constexpr (std::is_same_v<T, ShuntResistor>) {
                    check_positive(el.r, "resistance");
                } else if constexpr (std::is_same_v<T, CSectionElement>) {
                    check_positive(el.z_even, "even-mode impedance");
                    check_positive(el.z_odd, "odd-mode impedance");
                    check_positive(el.theta_at_f1, "electrical length");
                } else {
                    check_positive(el.z, "characteristic impedance");
                    check_positive(el.theta_at_f1, "electrical length");
                }
            },
            b.element);
        if (is_two_port(b.element) && (b.from == ground_node || b.to == ground_node))
            throw Error(ErrorCode::invalid_network, "two-port element cannot terminate on ground");
        if (b.from != ground_node && b.to != ground_node) parent[find(b.from)] = find(b.to);
    }

    std::set<std::string> port_roots;
    for (const auto& p : net.ports) port_roots.insert(find(p.node));
    for (const auto& n : net.nodes) {
        if (!port_roots.count(find(n)))
            throw Error(ErrorCode::invalid_network, "node '" + n + "' is not connected to any port");
    }
}

FrequencyGrid FrequencyGrid::linear(double fstart, double fstop, int count) {
    if (count < 1) throw Error(ErrorCode::invalid_argument, "grid needs at least one point");
    if (!(fstart > 0.0)) throw Error(ErrorCode::non_positive_frequency, "grid start must be > 0");
    FrequencyGrid g;
    if (count == 1) {
        g.points.push_back(fstart);
        return g;
    }
    if (!(fstop > fstart)) throw Error(ErrorCode::invalid_argument, "grid stop must exceed start");
    g.points.reserve(static_cast<std::size_t>(count));
    const double step = (fstop - fstart) / (count - 1);
    for (int i = 0; i < count; ++i) g.points.push_back(fstart + step * i);
    g.points.back() = fstop;
    return g;
}

FrequencyGrid FrequencyGrid::single(double f) {
    if (!(f > 0.0)) throw Error(ErrorCode::non_positive_frequency, "frequency must be > 0");
    return FrequencyGrid{{f}};
}

void validate_grid(const FrequencyGrid& grid) {
    if (grid.points.empty()) throw Error(ErrorCode::invalid_argument, "empty frequency grid");
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        if (!(grid.points[i] > 0.0) || !std::isfinite(grid.points[i]))
            throw Error(ErrorCode::non_positive_frequency, "grid frequencies must be positive");
        if (i > 0 && !(grid.points[i] > grid.points[i - 1]))
            throw Error(ErrorCode::invalid_argument, "grid must be strictly increasing");
    }
}

}  // namespace ringdesign
