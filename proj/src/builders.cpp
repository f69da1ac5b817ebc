#include "ringdesign/builders.hpp"

#include <variant>

#include "ringdesign/error.hpp"
#include "ringdesign/units.hpp"

namespace ringdesign {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string node_name(const std::string& prefix, int i) { return prefix + "." + std::to_string(i); }

void check_ring(const RingSolution& s) {
    if (!(s.z_alpha > 0.0) || !(s.z_beta > 0.0) || !(s.theta_alpha > 0.0) || !(s.theta_beta > 0.0))
        throw Error(ErrorCode::topology_mismatch, "ring solution has non-positive lines");
}

}  // namespace

void append_shifter(Network& net, const ShifterParams& shifter, const std::string& from,
                    const std::string& to, const std::string& prefix) {
    std::visit(overloaded{
                   [&](const CSection& c) {
                       net.add_branch(CSectionElement{c.z_even, c.z_odd, c.theta_delta}, from, to);
                   },
                   [&](const PiStructure& p) {
                       net.add_branch(OpenStub{p.z_2pi, p.theta_2pi}, from);
                       net.add_branch(TLSection{p.z_1pi, p.theta_1pi}, from, to);
                       net.add_branch(OpenStub{p.z_2pi, p.theta_2pi}, to);
                   },
                   [&](const TStructure& t) {
                       const std::string mid = node_name(prefix, 1);
                       net.add_node(mid);
                       net.add_branch(TLSection{t.z_1t, t.theta_1t}, from, mid);
                       net.add_branch(OpenStub{t.z_2t, t.theta_2t}, mid);
                       net.add_branch(TLSection{t.z_1t, t.theta_1t}, mid, to);
                   },
                   [&](const IdealLine& l) { net.add_branch(TLSection{l.z, l.theta}, from, to); },
               },
               shifter);
}

void append_half_wave(Network& net, const ShifterParams& shifter, const std::string& from,
                      const std::string& to, const std::string& prefix) {
    std::visit(overloaded{
                   [&](const PiStructure& p) {
                       const std::string mid = node_name(prefix, 1);
                       net.add_node(mid);
                       net.add_branch(OpenStub{p.z_2pi, p.theta_2pi}, from);
                       net.add_branch(TLSection{p.z_1pi, p.theta_1pi}, from, mid);
                       net.add_branch(OpenStub{p.z_2pi / 2.0, p.theta_2pi}, mid);
                       net.add_branch(TLSection{p.z_1pi, p.theta_1pi}, mid, to);
                       net.add_branch(OpenStub{p.z_2pi, p.theta_2pi}, to);
                   },
                   [&](const TStructure& t) {
                       const std::string a = node_name(prefix, 1), b = node_name(prefix, 2);
                       net.add_node(a);
                       net.add_node(b);
                       net.add_branch(TLSection{t.z_1t, t.theta_1t}, from, a);
                       net.add_branch(OpenStub{t.z_2t, t.theta_2t}, a);
                       net.add_branch(TLSection{t.z_1t, 2.0 * t.theta_1t}, a, b);
                       net.add_branch(OpenStub{t.z_2t, t.theta_2t}, b);
                       net.add_branch(TLSection{t.z_1t, t.theta_1t}, b, to);
                   },
                   [&](const auto&) {
                       const std::string mid = node_name(prefix, 1);
                       net.add_node(mid);
                       append_shifter(net, shifter, from, mid, prefix + "a");
                       append_shifter(net, shifter, mid, to, prefix + "b");
                   },
               },
               shifter);
}

Network build_rrc_network(const RingSolution& s, const ShifterParams& shifter, double z0,
                          double f1) {
    check_ring(s);
    Network net;
    net.f1_hz = f1;
    for (const char* n : {"p1", "p2", "p3", "p4", "a", "b"}) net.add_node(n);
    for (const char* n : {"p1", "p2", "p3", "p4"}) net.add_port(n, z0);
    net.add_branch(TLSection{s.z_alpha, s.theta_alpha}, "p1", "p3");
    net.add_branch(TLSection{s.z_beta, s.theta_beta}, "p1", "p2");
    net.add_branch(TLSection{s.z_beta, s.theta_beta}, "p3", "p4");
    append_shifter(net, shifter, "p2", "a", "sh1");
    net.add_branch(TLSection{s.z_alpha, s.theta_alpha}, "a", "b");
    append_shifter(net, shifter, "b", "p4", "sh2");
    return net;
}

Network build_gpd_network(const RingSolution& s, const ShifterParams& shifter,
                          const IsolationResistors& r, double z0, double f1) {
    check_ring(s);
    if (!(r.r2 > 0.0) || !(r.r3 > 0.0))
        throw Error(ErrorCode::topology_mismatch, "isolation resistors must be positive");
    Network net;
    net.f1_hz = f1;
    for (const char* n : {"p1", "p2", "p3", "r2", "r3"}) net.add_node(n);
    for (const char* n : {"p1", "p2", "p3"}) net.add_port(n, z0);
    net.add_branch(TLSection{s.z_alpha, s.theta_alpha}, "p1", "p3");
    net.add_branch(TLSection{s.z_beta, s.theta_beta}, "p1", "p2");
    net.add_branch(TLSection{s.z_alpha, s.theta_alpha}, "p2", "r2");
    net.add_branch(TLSection{s.z_beta, s.theta_beta}, "p3", "r3");
    net.add_branch(ShuntResistor{r.r2}, "r2");
    net.add_branch(ShuntResistor{r.r3}, "r3");
    append_half_wave(net, shifter, "r2", "r3", "hw");
    return net;
}

Network build_network(const Design& d) {
    if (d.spec.device == Device::gpd) {
        if (!d.resistors) throw Error(ErrorCode::topology_mismatch, "divider design has no resistors");
        return build_gpd_network(d.ring, d.shifter, *d.resistors, d.spec.z0, d.spec.f1);
    }
    return build_rrc_network(d.ring, d.shifter, d.spec.z0, d.spec.f1);
}

Network build_shifter_network(const ShifterParams& shifter, double z_ref, double f1) {
    Network net;
    net.f1_hz = f1;
    net.add_node("p1");
    net.add_node("p2");
    net.add_port("p1", z_ref);
    net.add_port("p2", z_ref);
    append_shifter(net, shifter, "p1", "p2", "sh");
    return net;
}

TwoPortMatrix shifter_two_port(const ShifterParams& shifter, double f, double f1) {
    return std::visit(
        overloaded{
            [&](const CSection& c) {
                return element_two_port(CSectionElement{c.z_even, c.z_odd, c.theta_delta}, f, f1);
            },
            [&](const PiStructure& p) {
                const auto stub = element_two_port(OpenStub{p.z_2pi, p.theta_2pi}, f, f1);
                return stub * element_two_port(TLSection{p.z_1pi, p.theta_1pi}, f, f1) * stub;
            },
            [&](const TStructure& t) {
                const auto line = element_two_port(TLSection{t.z_1t, t.theta_1t}, f, f1);
                return line * element_two_port(OpenStub{t.z_2t, t.theta_2t}, f, f1) * line;
            },
            [&](const IdealLine& l) { return element_two_port(TLSection{l.z, l.theta}, f, f1); },
        },
        shifter);
}

namespace {

const TwoPortMatrix inverter{-1.0, 0.0, 0.0, -1.0};

TwoPortMatrix shunt_conductance(double g) { return {1.0, 0.0, g, 1.0}; }

}  // namespace

TwoPortMatrix isolation_circuit_rrc(double z_alpha, double theta_alpha, double z_beta,
                                    double theta_beta, double z0, double f, double f1) {
    return element_two_port(TLSection{z_alpha, theta_alpha}, f, f1) * inverter *
           shunt_conductance(1.0 / z0) * element_two_port(TLSection{z_beta, theta_beta}, f, f1);
}

TwoPortMatrix isolation_circuit_gpd(double z_alpha, double theta_alpha, double z_beta,
                                    double theta_beta, double r2, double r3, double f, double f1) {
    return element_two_port(TLSection{z_alpha, theta_alpha}, f, f1) * shunt_conductance(1.0 / r2) *
           inverter * shunt_conductance(1.0 / r3) *
           element_two_port(TLSection{z_beta, theta_beta}, f, f1);
}

}  // namespace ringdesign
