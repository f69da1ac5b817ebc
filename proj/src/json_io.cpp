#include "ringdesign/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <variant>

#include "ringdesign/error.hpp"
#include "ringdesign/units.hpp"

namespace ringdesign {

namespace {

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string format_scientific(double v) {
    std::string s = fmt::format("{:.16e}", v);
    // Shortest mantissa that still round-trips.
    for (int digits = 0; digits <= 16; ++digits) {
        std::string t = fmt::format("{:.{}e}", v, digits);
        if (std::stod(t) == v) return t;
    }
    return s;
}

std::string format_number(double v, const std::string& key) {
    if (!std::isfinite(v)) return "null";
    if (ends_with(key, "_hz")) return format_scientific(v);
    if (ends_with(key, "_deg") || ends_with(key, "_ohm")) {
        std::string s = fmt::format("{:.6g}", v);
        return s == "-0" ? "0" : s;
    }
    return fmt::format("{}", v);
}

void write_indent(std::string& out, int indent, int level) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
}

void dump_rec(const json& j, const std::string& key, int indent, int level, std::string& out) {
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                write_indent(out, indent, level + 1);
                out += json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                dump_rec(it.value(), it.key(), indent, level + 1, out);
            }
            write_indent(out, indent, level);
            out += '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
            out += '[';
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += flat ? ", " : ",";
                if (!flat) write_indent(out, indent, level + 1);
                first = false;
                dump_rec(e, key, indent, level + 1, out);
            }
            if (!flat) write_indent(out, indent, level);
            out += ']';
            return;
        }
        case json::value_t::number_float:
            out += format_number(j.get<double>(), key);
            return;
        default:
            out += j.dump();
    }
}

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::parse_error, what); }

double get_number(const json& j, std::initializer_list<const char*> keys, std::optional<double> fallback = {}) {
    for (const char* k : keys) {
        auto it = j.find(k);
        if (it == j.end() || it->is_null()) continue;
        if (!it->is_number()) parse_fail(std::string("field '") + k + "' must be a number");
        return it->get<double>();
    }
    if (fallback) return *fallback;
    parse_fail(std::string("missing field '") + *keys.begin() + "'");
}

std::optional<double> find_number(const json& j, std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
        auto it = j.find(k);
        if (it != j.end() && !it->is_null()) return get_number(j, {k});
    }
    return std::nullopt;
}

std::string get_string(const json& j, const char* key, const std::string& fallback) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return fallback;
    if (!it->is_string()) parse_fail(std::string("field '") + key + "' must be a string");
    return it->get<std::string>();
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string dump_json(const json& j, int indent) {
    std::string out;
    dump_rec(j, "", indent, 0, out);
    return out;
}

ResistorChoice parse_r_choice(const std::string& s) {
    if (s == "balanced") return ResistorChoice::balanced();
    if (s.rfind("n=", 0) == 0) {
        std::size_t used = 0;
        double n = 0.0;
        try {
            n = std::stod(s.substr(2), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() - 2)
            throw Error(ErrorCode::parse_error, "r_choice must be 'balanced' or 'n=<value>'");
        return ResistorChoice::explicit_ratio(n);
    }
    throw Error(ErrorCode::parse_error, "r_choice must be 'balanced' or 'n=<value>'");
}

std::string r_choice_name(const ResistorChoice& c) {
    if (c.kind == ResistorChoice::Kind::balanced) return "balanced";
    return "n=" + fmt::format("{}", c.n);
}

DesignRequest parse_design_request(const json& in) {
    if (!in.is_object()) parse_fail("design request must be a JSON object");
    const json& j = in.contains("spec") && in["spec"].is_object() ? in["spec"] : in;
    DesignRequest req;
    Device device = Device::rrc;
    Topology topology = Topology::c_section;
    try {
        device = parse_device(get_string(j, "device", "rrc"));
        topology = parse_topology(get_string(j, "topology", "c"));
    } catch (const Error& e) {
        parse_fail(e.what());
    }
    const double f1 = get_number(j, {"f1_hz", "f1"});
    const double f2 = get_number(j, {"f2_hz", "f2"});
    const double z0 = get_number(j, {"z0_ohm", "z0"}, 50.0);
    auto ratio = [&](const char* lin, const char* db) {
        if (auto v = find_number(j, {lin})) return *v;
        if (auto v = find_number(j, {db})) return db_to_ratio(*v);
        parse_fail(std::string("missing field '") + db + "' (or linear '" + lin + "')");
    };
    const double n1 = ratio("n1", "n1_db");
    const double n2 = ratio("n2", "n2_db");
    const auto zg = find_number(j, {"z_gamma_ohm", "zgamma"});
    req.r_choice = parse_r_choice(get_string(j, "r_choice", "balanced"));
    req.spec = make_spec(device, f1, f2, n1, n2, z0, topology, zg);
    return req;
}

json spec_to_json(const DesignSpec& s, const ResistorChoice& r_choice) {
    json j;
    j["device"] = std::string(device_name(s.device));
    j["topology"] = std::string(topology_name(s.topology));
    j["f1_hz"] = s.f1;
    j["f2_hz"] = s.f2;
    j["n1"] = s.n1;
    j["n2"] = s.n2;
    j["n1_db"] = ratio_to_db(s.n1);
    j["n2_db"] = ratio_to_db(s.n2);
    j["z0"] = s.z0;
    if (s.z_gamma) j["zgamma"] = *s.z_gamma;
    j["m"] = s.m();
    j["k"] = s.k();
    if (s.device == Device::gpd) j["r_choice"] = r_choice_name(r_choice);
    return j;
}

json solution_to_json(const RingSolution& s) {
    return json{{"theta_alpha_deg", rad_to_deg(s.theta_alpha)},
                {"theta_beta_deg", rad_to_deg(s.theta_beta)},
                {"phi1_deg", rad_to_deg(s.phi1)},
                {"phi2_deg", rad_to_deg(s.phi2)},
                {"z_alpha_ohm", s.z_alpha},
                {"z_beta_ohm", s.z_beta}};
}

json shifter_to_json(const ShifterParams& p) {
    return std::visit(
        overloaded{
            [](const CSection& c) {
                return json{{"type", "c"},
                            {"theta_delta_deg", rad_to_deg(c.theta_delta)},
                            {"z_even_ohm", c.z_even},
                            {"z_odd_ohm", c.z_odd}};
            },
            [](const PiStructure& s) {
                return json{{"type", "pi"},
                            {"theta_1pi_deg", rad_to_deg(s.theta_1pi)},
                            {"theta_2pi_deg", rad_to_deg(s.theta_2pi)},
                            {"z_1pi_ohm", s.z_1pi},
                            {"z_2pi_ohm", s.z_2pi}};
            },
            [](const TStructure& s) {
                return json{{"type", "t"},
                            {"theta_1t_deg", rad_to_deg(s.theta_1t)},
                            {"theta_2t_deg", rad_to_deg(s.theta_2t)},
                            {"z_1t_ohm", s.z_1t},
                            {"z_2t_ohm", s.z_2t}};
            },
            [](const IdealLine& l) {
                return json{{"type", "tl"}, {"theta_deg", rad_to_deg(l.theta)}, {"z_ohm", l.z}};
            },
        },
        p);
}

json feasibility_to_json(const FeasibilityReport& f) {
    json imps = json::array();
    for (const auto& c : f.impedances)
        imps.push_back({{"name", c.name}, {"value_ohm", c.value}, {"in_window", c.in_window}});
    return json{{"feasible", f.feasible}, {"impedances", imps}, {"advisory", f.advisory}};
}

json design_to_json(const Design& d, const ResistorChoice& r_choice) {
    json j;
    j["spec"] = spec_to_json(d.spec, r_choice);
    j["solution"] = solution_to_json(d.ring);
    j["shifter"] = shifter_to_json(d.shifter);
    j["z_gamma_ohm"] = d.z_gamma;
    if (d.resistors) j["resistors"] = {{"r2_ohm", d.resistors->r2}, {"r3_ohm", d.resistors->r3}};
    j["feasibility"] = feasibility_to_json(d.feasibility);
    j["residuals"] = {{"dualband", d.ring.residual_dualband}, {"impedance", d.ring.residual_impedance}};
    j["warnings"] = d.warnings;
    return j;
}

json exactness_to_json(const ExactnessReport& r) {
    json bands = json::array();
    for (const auto& b : r.bands) {
        json e{{"frequency_hz", b.frequency},
               {"max_entry_error", b.max_entry_error},
               {"phase_error_deg", b.phase_error_deg},
               {"s11_db", b.s11_db}};
        if (b.s23_db) e["s23_db"] = *b.s23_db;
        bands.push_back(e);
    }
    return json{{"bands", bands}, {"max_entry_error", r.max_entry_error}};
}

json network_to_json(const Network& net) {
    json branches = json::array();
    for (const auto& br : net.branches) {
        json b = std::visit(
            overloaded{
                [](const TLSection& e) { return json{{"kind", "tl"}, {"z", e.z}, {"theta_deg_at_f1", rad_to_deg(e.theta_at_f1)}}; },
                [](const OpenStub& e) { return json{{"kind", "stub"}, {"z", e.z}, {"theta_deg_at_f1", rad_to_deg(e.theta_at_f1)}}; },
                [](const CSectionElement& e) {
                    return json{{"kind", "csection"}, {"z_even", e.z_even}, {"z_odd", e.z_odd},
                                {"theta_deg_at_f1", rad_to_deg(e.theta_at_f1)}};
                },
                [](const ShuntResistor& e) { return json{{"kind", "resistor"}, {"r", e.r}}; },
            },
            br.element);
        b["from"] = br.from;
        b["to"] = br.to;
        branches.push_back(b);
    }
    json ports = json::array();
    for (const auto& p : net.ports) ports.push_back({{"node", p.node}, {"z0", p.z0}});
    return json{{"f1_hz", net.f1_hz}, {"nodes", net.nodes}, {"ports", ports}, {"branches", branches}};
}

Network network_from_json(const json& j) {
    if (!j.is_object()) parse_fail("netlist must be a JSON object");
    Network net;
    net.f1_hz = get_number(j, {"f1_hz"});
    if (!j.contains("nodes") || !j["nodes"].is_array()) parse_fail("netlist needs a 'nodes' array");
    for (const auto& n : j["nodes"]) {
        if (!n.is_string()) parse_fail("node ids must be strings");
        net.nodes.push_back(n.get<std::string>());
    }
    if (!j.contains("ports") || !j["ports"].is_array()) parse_fail("netlist needs a 'ports' array");
    for (const auto& p : j["ports"]) net.ports.push_back({get_string(p, "node", ""), get_number(p, {"z0", "z0_ohm"}, 50.0)});
    if (!j.contains("branches") || !j["branches"].is_array()) parse_fail("netlist needs a 'branches' array");
    for (const auto& b : j["branches"]) {
        const std::string type = b.contains("kind") ? get_string(b, "kind", "") : get_string(b, "type", "");
        Element e;
        if (type == "tl") e = TLSection{get_number(b, {"z", "z_ohm"}), deg_to_rad(get_number(b, {"theta_deg_at_f1", "theta_deg"}))};
        else if (type == "stub") e = OpenStub{get_number(b, {"z", "z_ohm"}), deg_to_rad(get_number(b, {"theta_deg_at_f1", "theta_deg"}))};
        else if (type == "csection")
            e = CSectionElement{get_number(b, {"z_even", "z_even_ohm"}), get_number(b, {"z_odd", "z_odd_ohm"}),
                                deg_to_rad(get_number(b, {"theta_deg_at_f1", "theta_deg"}))};
        else if (type == "resistor") e = ShuntResistor{get_number(b, {"r", "r_ohm"})};
        else parse_fail("unknown branch kind '" + type + "'");
        net.branches.push_back({e, get_string(b, "from", ""), get_string(b, "to", std::string(ground_node))});
    }
    validate_network(net);
    return net;
}

json metrics_to_json(const SweepResult& sw, const MetricChannels& mc, std::size_t max_points) {
    const std::size_t n = mc.frequency.size();
    std::vector<std::size_t> idx;
    if (max_points == 0 || n <= max_points) {
        for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
    } else if (max_points == 1) {
        idx.push_back(0);
    } else {
        for (std::size_t i = 0; i < max_points; ++i)
            idx.push_back(static_cast<std::size_t>(std::llround(static_cast<double>(i) * static_cast<double>(n - 1) /
                                                                static_cast<double>(max_points - 1))));
    }
    json freq = json::array();
    for (auto i : idx) freq.push_back(mc.frequency[i]);
    json channels = json::object();
    for (const auto& name : mc.names) {
        json vals = json::array();
        for (auto i : idx) {
            const double v = mc[name][i];
            vals.push_back(std::isfinite(v) ? json(v) : json(nullptr));
        }
        channels[name] = vals;
    }
    json flagged = json::array(), failed = json::array();
    for (std::size_t i = 0; i < sw.points.size(); ++i) {
        const auto& pt = sw.points[i];
        if (pt.perturbed) flagged.push_back({{"frequency_hz", pt.frequency}, {"evaluated_frequency_hz", pt.evaluated_frequency}});
        if (!pt.s) failed.push_back({{"frequency_hz", pt.frequency}, {"error", pt.error}});
    }
    return json{{"points", n},
                {"returned_points", idx.size()},
                {"frequency_hz", freq},
                {"channel_order", mc.names},
                {"channels", channels},
                {"perturbed", flagged},
                {"failed", failed}};
}

json space_table_to_json(const SpaceTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row{{"m", r.m}, {"k", r.k}, {"converged", r.converged}};
        if (r.converged) {
            row["theta_alpha_deg"] = rad_to_deg(r.ring.theta_alpha);
            row["theta_beta_deg"] = rad_to_deg(r.ring.theta_beta);
            row["residual_dualband"] = r.ring.residual_dualband;
        }
        if (r.phases_valid) {
            row["phi1_deg"] = rad_to_deg(r.ring.phi1);
            row["phi2_deg"] = rad_to_deg(r.ring.phi2);
            row["z_alpha_ohm"] = r.ring.z_alpha;
            row["z_beta_ohm"] = r.ring.z_beta;
            row["residual_impedance"] = r.ring.residual_impedance;
            row["impedance_in_range"] = r.impedance_in_range;
        }
        if (r.shifter) row["shifter"] = shifter_to_json(*r.shifter);
        if (r.feasibility) row["feasible"] = r.feasibility->feasible;
        if (!r.error.empty()) row["error"] = r.error;
        rows.push_back(row);
    }
    json j{{"figure", std::string(space_figure_name(t.figure))}, {"n1", t.n1}, {"z0", t.z0}, {"rows", rows}};
    if (t.topology) {
        j["topology"] = std::string(topology_name(*t.topology));
        json bands = json::array();
        for (const auto& b : feasible_bands(t)) {
            json iv = json::array();
            for (const auto& [lo, hi] : b.intervals) iv.push_back({lo, hi});
            bands.push_back({{"k", b.k}, {"m_intervals", iv}});
        }
        j["feasible_bands"] = bands;
        j["advisory"] = topology_guidance(*t.topology);
    }
    return j;
}

json polarization_to_json(const PolarizationReport& r) {
    auto c = [](cplx v) { return json{{"re", v.real()}, {"im", v.imag()}}; };
    return json{{"frequency_hz", r.frequency},
                {"excited_port", r.excited_port},
                {"ex", c(r.field.ex)},
                {"ey", c(r.field.ey)},
                {"axial_ratio_db", r.axial_ratio_db},
                {"handedness", std::string(handedness_name(r.handedness))}};
}

json error_to_json(const std::string& code, const std::string& message) {
    return json{{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace ringdesign
