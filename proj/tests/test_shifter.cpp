#include <doctest.h>

#include <random>

#include "nodal_oracle.hpp"
#include "ringdesign/builders.hpp"
#include "ringdesign/error.hpp"
#include "ringdesign/shifter.hpp"
#include "ringdesign/units.hpp"

using namespace ringdesign;

TEST_CASE("C-section synthesis") {
    const CSection a = synth_c_section(2.4, 44.80);
    CHECK(rad_to_deg(a.theta_delta) == doctest::Approx(52.9412).epsilon(1e-6));
    CHECK(a.z_even == doctest::Approx(59.32).epsilon(2e-4));
    CHECK(a.z_odd == doctest::Approx(33.83).epsilon(2e-4));
    const CSection b = synth_c_section(5.2 / 2.4, 54.3961);
    CHECK(rad_to_deg(b.theta_delta) == doctest::Approx(56.8421).epsilon(1e-6));
    CHECK(b.z_even == doctest::Approx(83.2594).epsilon(1e-6));
    CHECK(b.z_odd == doctest::Approx(35.53875).epsilon(1e-6));
    const CSection c = synth_c_section(3.0, 60.0);
    CHECK(c.z_even == doctest::Approx(60.0));
    CHECK(c.z_odd == doctest::Approx(60.0));
}

TEST_CASE("C-section product identity and scaling") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> um(1.05, 9.5), uz(10.0, 200.0), uc(0.2, 5.0);
    for (int i = 0; i < 100; ++i) {
        const double m = um(rng), z = uz(rng), c = uc(rng);
        const CSection s = synth_c_section(m, z);
        CHECK(std::abs(s.z_even * s.z_odd / (z * z) - 1.0) < 1e-12);
        const CSection t = synth_c_section(m, c * z);
        CHECK(t.z_even == doctest::Approx(c * s.z_even).epsilon(1e-12));
        CHECK(t.z_odd == doctest::Approx(c * s.z_odd).epsilon(1e-12));
        if (std::abs(m - 3.0) > 0.01) {
            const TStructure tt = synth_t(m, c * z), ts = synth_t(m, z);
            CHECK(tt.z_2t == doctest::Approx(c * ts.z_2t).epsilon(1e-12));
        }
        const PiStructure pp = synth_pi(m, c * z), ps = synth_pi(m, z);
        CHECK(pp.z_2pi == doctest::Approx(c * ps.z_2pi).epsilon(1e-12));
    }
}

TEST_CASE("Pi synthesis") {
    const PiStructure a = synth_pi(3.0, 50.0);
    CHECK(rad_to_deg(a.theta_1pi) == doctest::Approx(45.0));
    CHECK(a.z_1pi == doctest::Approx(70.7107).epsilon(1e-6));
    CHECK(a.z_2pi == doctest::Approx(70.7107).epsilon(1e-6));
    const PiStructure b = synth_pi(2.0, 50.0);
    CHECK(b.z_1pi == doctest::Approx(57.735).epsilon(1e-5));
    CHECK(b.z_2pi == doctest::Approx(173.205).epsilon(1e-5));
    const PiStructure c = synth_pi(2.5, 50.0);
    CHECK(rad_to_deg(c.theta_1pi) == doctest::Approx(51.4286).epsilon(1e-6));
    CHECK(c.z_1pi == doctest::Approx(63.9524).epsilon(1e-6));
    CHECK(c.z_2pi == doctest::Approx(100.5598).epsilon(1e-6));
}

TEST_CASE("T synthesis") {
    const TStructure a = synth_t(2.0, 50.0);
    CHECK(rad_to_deg(a.theta_1t) == doctest::Approx(60.0));
    CHECK(rad_to_deg(a.theta_2t) == doctest::Approx(120.0));
    CHECK(a.z_1t == doctest::Approx(28.8675).epsilon(1e-5));
    CHECK(a.z_2t == doctest::Approx(43.3013).epsilon(1e-5));
    const TStructure b = synth_t(1.8, 50.0);
    CHECK(rad_to_deg(b.theta_1t) == doctest::Approx(64.2857).epsilon(1e-6));
    CHECK(b.z_1t == doctest::Approx(24.0787).epsilon(1e-5));
    CHECK(b.z_2t > 0.0);
    try {
        synth_t(3.0, 50.0);
        FAIL("expected SingularSynthesis");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::singular_synthesis);
    }
}

TEST_CASE("feasibility") {
    const FeasibilityReport a = check_feasibility(synth_c_section(2.4, 44.80), {});
    CHECK(a.feasible);
    const FeasibilityReport b = check_feasibility(synth_pi(2.0, 50.0), {});
    CHECK_FALSE(b.feasible);
    REQUIRE(b.impedances.size() == 2);
    CHECK(b.impedances[1].name == "z_2pi");
    CHECK_FALSE(b.impedances[1].in_window);
    const FeasibilityReport c = check_feasibility(synth_pi(2.0, 50.0), {0.0, std::numeric_limits<double>::infinity()});
    CHECK(c.feasible);
    CHECK(a.advisory.find("2.75") != std::string::npos);
}

TEST_CASE("shifters equal a quarter-wave line at f1 and stay matched at f2") {
    const double f1 = 1e9;
    for (double m : {1.8, 2.2, 2.4, 2.7}) {
        const double zg = 47.0;
        const TwoPortMatrix ideal = element_two_port(TLSection{zg, pi / 2}, f1, f1);
        for (Topology t : {Topology::c_section, Topology::pi, Topology::t}) {
            const ShifterParams p = synthesize_shifter(t, m, zg);
            const TwoPortMatrix a = shifter_two_port(p, f1, f1);
            CHECK(std::abs(a.a - ideal.a) < 1e-9);
            CHECK(std::abs(a.b - ideal.b) < 1e-9 * zg);
            CHECK(std::abs(a.c - ideal.c) < 1e-9 / zg);
            CHECK(std::abs(a.d - ideal.d) < 1e-9);
            const TwoPortMatrix b = shifter_two_port(p, m * f1, f1);
            CHECK(std::abs(image_impedance(b) - zg) < 1e-9 * zg);
            CHECK(std::abs(std::abs(chain_to_s(b, zg).s21) - 1.0) < 1e-9);
            // Independent oracle on the same netlist.
            const auto s = oracle::s_parameters(build_shifter_network(p, zg, f1), m * f1);
            CHECK(std::abs(s[0][0]) < 1e-9);
            CHECK(std::abs(s[1][0] - chain_to_s(b, zg).s21) < 1e-9);
        }
    }
}
