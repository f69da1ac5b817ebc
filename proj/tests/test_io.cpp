#include <doctest.h>

#include <sstream>

#include "ringdesign/builders.hpp"
#include "ringdesign/error.hpp"
#include "ringdesign/export.hpp"
#include "ringdesign/json_io.hpp"
#include "ringdesign/units.hpp"

using namespace ringdesign;

namespace {

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("number formatting per key") {
    const json j{{"theta_deg", 46.039712345}, {"z_ohm", 44.79961234}, {"f_hz", 2.4e9}, {"n1", 1.9952623149688795}};
    const std::string s = dump_json(j, -1);
    CHECK(s == R"({"f_hz":2.4e+09,"n1":1.9952623149688795,"theta_deg":46.0397,"z_ohm":44.7996})");
    CHECK(dump_json(json{{"x", std::nan("")}}, -1) == R"({"x":null})");
}

TEST_CASE("design request parsing") {
    const DesignRequest a = parse_design_request(json::parse(
        R"({"device":"gpd","f1_hz":1e9,"f2_hz":2.4e9,"n1_db":3,"n2_db":-3,"topology":"pi","r_choice":"n=2"})"));
    CHECK(a.spec.device == Device::gpd);
    CHECK(a.spec.topology == Topology::pi);
    CHECK(a.spec.n1 == doctest::Approx(db_to_ratio(3.0)));
    CHECK(a.r_choice.kind == ResistorChoice::Kind::explicit_n);
    CHECK(a.r_choice.n == 2.0);
    const DesignRequest b = parse_design_request(json::parse(R"({"f1":1e9,"f2":2e9,"n1":2,"n2":0.5})"));
    CHECK(b.spec.n1 == 2.0);
    CHECK(b.spec.z0 == 50.0);
    auto code_of = [](const char* text) {
        try {
            parse_design_request(json::parse(text));
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::invalid_argument;
    };
    CHECK(code_of(R"({"f2_hz":2e9,"n1_db":0,"n2_db":0})") == ErrorCode::parse_error);
    CHECK(code_of(R"({"f1_hz":"x","f2_hz":2e9,"n1_db":0,"n2_db":0})") == ErrorCode::parse_error);
    CHECK(code_of(R"({"f1_hz":1e9,"f2_hz":1e9,"n1_db":0,"n2_db":0})") == ErrorCode::ratio_out_of_range);
    CHECK(code_of(R"({"f1_hz":1e9,"f2_hz":2e9,"n1_db":0,"n2_db":0,"topology":"q"})") == ErrorCode::parse_error);
    CHECK_THROWS_AS(parse_r_choice("n=abc"), Error);
}

TEST_CASE("design document round trip through its spec block") {
    const DesignRequest req = parse_design_request(json::parse(R"({"f1_hz":1e9,"f2_hz":2.4e9,"n1_db":3,"n2_db":-3})"));
    const Design d = design(req.spec, {}, req.r_choice);
    const json doc = json::parse(dump_json(design_to_json(d, req.r_choice)));
    const DesignRequest again = parse_design_request(doc);
    CHECK(again.spec.f1 == req.spec.f1);
    CHECK(again.spec.f2 == req.spec.f2);
    CHECK(again.spec.n1 == req.spec.n1);
    CHECK(again.spec.n2 == req.spec.n2);
    CHECK(dump_json(design_to_json(design(again.spec), again.r_choice)) == dump_json(design_to_json(d, req.r_choice)));
    CHECK(doc["solution"]["theta_alpha_deg"].get<double>() == 46.0594);
}

TEST_CASE("netlist json round trip") {
    const Design d = design(make_spec(Device::gpd, 1e9, 2.5e9, 2.0, 0.5, 50.0, Topology::pi));
    const Network net = build_network(d);
    const Network back = network_from_json(json::parse(dump_json(network_to_json(net))));
    CHECK(back.nodes == net.nodes);
    CHECK(back.branches.size() == net.branches.size());
    const CMatrix a = assemble_sparams(net, 1.3e9).s, b = assemble_sparams(back, 1.3e9).s;
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(network_from_json(json::parse(R"({"f1_hz":1e9,"nodes":["a"],"ports":[],"branches":[{"kind":"x"}]})")), Error);
}

TEST_CASE("touchstone two-port column order") {
    Network net;
    net.add_node("a");
    net.add_node("b");
    net.add_port("a", 50.0);
    net.add_port("b", 50.0);
    net.add_branch(TLSection{50.0, pi / 2}, "a", "b");
    net.add_branch(ShuntResistor{100.0}, "b");
    const SweepResult sw = sweep(net, FrequencyGrid::single(1e9));
    std::ostringstream os;
    write_touchstone(os, sw);
    const auto ls = lines(os.str());
    REQUIRE(ls.size() == 3);
    CHECK(ls[1] == "# HZ S RI R 50");
    std::istringstream row(ls[2]);
    std::vector<double> v;
    for (double x; row >> x;) v.push_back(x);
    REQUIRE(v.size() == 9);
    const CMatrix& s = *sw.points[0].s;
    CHECK(v[0] == 1e9);
    CHECK(v[1] == doctest::Approx(s(0, 0).real()));
    CHECK(v[3] == doctest::Approx(s(1, 0).real()));
    CHECK(v[4] == doctest::Approx(s(1, 0).imag()));
    CHECK(v[5] == doctest::Approx(s(0, 1).real()));
    CHECK(v[7] == doctest::Approx(s(1, 1).real()));
    CHECK(touchstone_extension(sw) == ".s2p");
}

TEST_CASE("touchstone four-port rows and reference override") {
    const Design d = design(make_spec(Device::rrc, 1e9, 2.4e9, 2.0, 0.5, 50.0, Topology::c_section));
    const SweepResult sw = sweep(build_network(d), FrequencyGrid::linear(1e9, 2e9, 2));
    std::ostringstream os;
    write_touchstone(os, sw);
    const auto ls = lines(os.str());
    CHECK(ls.size() == 2 + 2 * 4);
    std::istringstream first(ls[2]);
    std::vector<double> v;
    for (double x; first >> x;) v.push_back(x);
    CHECK(v.size() == 9);
    std::ostringstream os75;
    write_touchstone(os75, sw, 75.0);
    CHECK(lines(os75.str())[1] == "# HZ S RI R 75");
    CHECK(touchstone_extension(sw) == ".s4p");
}

TEST_CASE("metrics csv") {
    const Design d = design(make_spec(Device::rrc, 1e9, 2.4e9, 2.0, 0.5, 50.0, Topology::c_section));
    const SweepResult sw = sweep(build_network(d), FrequencyGrid::linear(0.5e9, 3e9, 5));
    std::ostringstream os;
    write_metrics_csv(os, extract_metrics(sw, RoleMap{}));
    const auto ls = lines(os.str());
    REQUIRE(ls.size() == 6);
    CHECK(ls[0].rfind("frequency_hz,s11_db,s22_db,s33_db,s44_db,s21_db,s31_db,imbalance_db", 0) == 0);
    CHECK(ls[1].rfind("5.000000e+08,", 0) == 0);
}

TEST_CASE("decimation keeps both ends") {
    const Design d = design(make_spec(Device::rrc, 1e9, 2.4e9, 2.0, 0.5, 50.0, Topology::c_section));
    const SweepResult sw = sweep(build_network(d), FrequencyGrid::linear(0.5e9, 3e9, 301));
    const json j = metrics_to_json(sw, extract_metrics(sw, RoleMap{}), 100);
    CHECK(j["returned_points"] == 100);
    CHECK(j["frequency_hz"].front().get<double>() == 0.5e9);
    CHECK(j["frequency_hz"].back().get<double>() == 3e9);
    CHECK(j["channels"]["s11_db"].size() == 100);
}
