#include <doctest.h>

#include <sstream>

#include "ringdesign/design_space.hpp"
#include "ringdesign/error.hpp"
#include "ringdesign/units.hpp"

using namespace ringdesign;

TEST_CASE("m grid is inclusive and index based") {
    const auto g = m_grid(1.1, 3.0, 0.01);
    CHECK(g.size() == 191);
    CHECK(g.front() == 1.1);
    CHECK(g.back() == 3.0);
    CHECK(g[130] == 2.4);
    CHECK_THROWS_AS(m_grid(2.0, 1.0, 0.1), Error);
}

TEST_CASE("length table along k = 1 follows 180/(1+m)") {
    const SpaceTable t = sweep_lengths(m_grid(1.1, 2.9, 0.05), {4.0, 1.0, 2.0});
    CHECK(t.rows.size() == 3 * 37);
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        const auto& a = t.rows[i - 1];
        const auto& b = t.rows[i];
        CHECK((a.k < b.k || (a.k == b.k && a.m < b.m)));
    }
    for (const auto& r : t.rows) {
        REQUIRE(r.converged);
        CHECK(r.ring.residual_dualband < 1e-10);
        if (r.k == 1.0) CHECK(std::abs(rad_to_deg(r.ring.theta_alpha) - 180.0 / (1.0 + r.m)) < 1e-8);
    }
}

TEST_CASE("table row at the golden point") {
    const SpaceTable t = sweep_lengths({2.4}, {0.25});
    REQUIRE(t.rows.size() == 1);
    CHECK(rad_to_deg(t.rows[0].ring.theta_alpha) == doctest::Approx(46.04).epsilon(3e-4));
    CHECK(rad_to_deg(t.rows[0].ring.theta_beta) == doctest::Approx(60.61).epsilon(3e-4));
    const SpaceTable one = sweep_lengths({2.0}, {1.0});
    CHECK(rad_to_deg(one.rows[0].ring.theta_alpha) == doctest::Approx(60.0));
}

TEST_CASE("m = 3 is flagged, not raised") {
    const SpaceTable t = sweep_lengths({2.9, 3.0}, {2.0});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].converged);
    CHECK_FALSE(t.rows[1].converged);
    CHECK_FALSE(t.rows[1].error.empty());
}

TEST_CASE("impedance table and panel symmetry") {
    const auto ms = m_grid(1.5, 2.9, 0.1);
    const SpaceTable a = sweep_impedances(ms, {2.0}, 2.0, 50.0);
    const SpaceTable b = sweep_impedances(ms, {0.5}, 0.5, 50.0);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        REQUIRE(a.rows[i].phases_valid);
        REQUIRE(b.rows[i].phases_valid);
        CHECK(a.rows[i].ring.z_alpha == doctest::Approx(b.rows[i].ring.z_beta).epsilon(1e-8));
        CHECK(a.rows[i].ring.z_beta == doctest::Approx(b.rows[i].ring.z_alpha).epsilon(1e-8));
        CHECK(a.rows[i].ring.phi1 == doctest::Approx(b.rows[i].ring.phi1).epsilon(1e-8));
    }
    const SpaceTable c = sweep_impedances({2.0}, {1.0}, 1.0, 50.0);
    CHECK(c.rows[0].ring.z_alpha == doctest::Approx(57.735).epsilon(1e-5));
    CHECK(c.rows[0].impedance_in_range);
    CHECK_THROWS_AS(sweep_impedances(ms, {1.0}, 0.0, 50.0), Error);
}

TEST_CASE("shifter table feasible bands") {
    const SpaceTable t = sweep_shifter(Topology::c_section, m_grid(1.5, 3.0, 0.01), {1.0}, 1.0, 50.0);
    const auto bands = feasible_bands(t);
    REQUIRE(bands.size() == 1);
    REQUIRE_FALSE(bands[0].intervals.empty());
    bool covers = false;
    for (const auto& [lo, hi] : bands[0].intervals) covers = covers || (lo <= 2.0 && hi >= 2.75);
    CHECK(covers);
}

TEST_CASE("csv layout") {
    std::ostringstream os;
    write_space_csv(os, sweep_shifter(Topology::pi, {2.5}, {1.0}, 1.0, 50.0));
    const std::string csv = os.str();
    CHECK(csv.rfind("m,k,theta_alpha_deg,theta_beta_deg,phi1_deg,phi2_deg,z_alpha_ohm,z_beta_ohm,converged", 0) == 0);
    CHECK(csv.find("z_2pi_ohm") != std::string::npos);
    std::ostringstream again;
    write_space_csv(again, sweep_shifter(Topology::pi, {2.5}, {1.0}, 1.0, 50.0));
    CHECK(again.str() == csv);
}
