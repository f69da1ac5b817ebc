#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ringdesign/cli.hpp"
#include "ringdesign/json_io.hpp"

using namespace ringdesign;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "ringdesign");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("design command") {
    const Run r = run({"design", "--device", "rrc", "--f1", "1e9", "--f2", "2.4e9", "--n1", "2", "--n2", "0.5", "--topology", "c"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["solution"]["theta_alpha_deg"].get<double>() == doctest::Approx(46.04).epsilon(1e-4));
    CHECK(j["solution"]["theta_beta_deg"].get<double>() == doctest::Approx(60.61).epsilon(1e-4));
    CHECK(j["shifter"]["theta_delta_deg"].get<double>() == doctest::Approx(52.94).epsilon(1e-4));
    CHECK(j["solution"]["z_alpha_ohm"].get<double>() == doctest::Approx(44.80).epsilon(1e-4));
    CHECK(j["solution"]["z_beta_ohm"].get<double>() == doctest::Approx(52.34).epsilon(1e-4));
    CHECK(j["shifter"]["z_odd_ohm"].get<double>() == doctest::Approx(33.83).epsilon(1e-4));
    const Run again = run({"design", "--device", "rrc", "--f1", "1e9", "--f2", "2.4e9", "--n1", "2", "--n2", "0.5", "--topology", "c"});
    CHECK(again.out == r.out);
}

TEST_CASE("divider resistors") {
    const Run r = run({"design", "--device", "gpd", "--f1", "1e9", "--f2", "2.4e9", "--n1-db", "3", "--n2-db", "-3", "--r-choice", "n=1"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["resistors"]["r2_ohm"].get<double>() == doctest::Approx(100.0));
    CHECK(j["resistors"]["r3_ohm"].get<double>() == doctest::Approx(100.0));
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"design", "--f1", "1e9"}).code == 2);
    CHECK(run({"design", "--f1", "1e9", "--f2", "2e9", "--n1-db", "0", "--n2-db", "0", "--topology", "x"}).code == 2);
    const Run solver = run({"design", "--f1", "1e9", "--f2", "1e9", "--n1-db", "0", "--n2-db", "0"});
    CHECK(solver.code == 1);
    CHECK(json::parse(solver.err)["error"]["code"] == "RatioOutOfRange");
    CHECK(run({"design", "--help"}).code == 0);
}

TEST_CASE("simulate from a design file") {
    const Run d = run({"design", "--f1", "1e9", "--f2", "2.4e9", "--n1-db", "3", "--n2-db", "-3"});
    REQUIRE(d.code == 0);
    const std::string path = "cli_test_design.json";
    std::ofstream(path) << d.out;
    const Run s = run({"simulate", "--design", path, "--fstart", "0.5e9", "--fstop", "3e9", "--points", "201", "--out", "touchstone"});
    REQUIRE(s.code == 0);
    std::istringstream is(s.out);
    std::string line;
    std::getline(is, line);
    std::getline(is, line);
    CHECK(line == "# HZ S RI R 50");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 201 * 4);
    const Run c = run({"simulate", "--design", path, "--points", "11", "--out", "csv"});
    REQUIRE(c.code == 0);
    CHECK(c.out.rfind("frequency_hz,", 0) == 0);
    std::remove(path.c_str());
}

TEST_CASE("netlist export and simulation") {
    const std::string path = "cli_test_netlist.json";
    const Run d = run({"design", "--device", "gpd", "--f1", "1e9", "--f2", "2.4e9", "--n1-db", "3", "--n2-db", "-3",
                       "--netlist-out", path});
    REQUIRE(d.code == 0);
    const Run s = run({"simulate", "--netlist", path, "--fstart", "1e9", "--fstop", "2.4e9", "--points", "2", "--out", "csv"});
    REQUIRE(s.code == 0);
    CHECK(s.out.find("output_isolation_db") != std::string::npos);
    const Run inline_design = run({"simulate", "--device", "gpd", "--f1", "1e9", "--f2", "2.4e9", "--n1-db", "3",
                                   "--n2-db", "-3", "--fstart", "1e9", "--fstop", "2.4e9", "--points", "2", "--out", "csv"});
    // Matched-port columns sit at round-off level, so compare the transmission columns.
    for (const char* cols : {",-4.76435,-1.76435,-3,3,", ",-1.76435,-4.76435,3,-3,"}) {
        CHECK(s.out.find(cols) != std::string::npos);
        CHECK(inline_design.out.find(cols) != std::string::npos);
    }
    CHECK(run({"simulate", "--netlist", path}).code == 2);
    std::remove(path.c_str());
}

TEST_CASE("sweep-space and polarization") {
    const Run s = run({"sweep-space", "--figure", "shifter", "--topology", "pi", "--k", "1,2", "--m-start", "2", "--m-stop", "2.5", "--m-step", "0.1"});
    REQUIRE(s.code == 0);
    CHECK(s.out.find("z_1pi_ohm") != std::string::npos);
    const Run p = run({"polarization", "--f1", "2.4e9", "--f2", "5.2e9", "--n1-db", "0", "--n2-db", "20", "--port", "1", "--quarter-wave"});
    REQUIRE(p.code == 0);
    const json j = json::parse(p.out);
    CHECK(j["reports"][0]["handedness"] == "LHCP");
    CHECK(j["reports"][1]["axial_ratio_db"].get<double>() == doctest::Approx(-20.0).epsilon(1e-6));
    CHECK(run({"polarization", "--f1", "2.4e9", "--f2", "5.2e9", "--n1-db", "0", "--n2-db", "20", "--port", "2"}).code == 2);
}
