#include <doctest.h>

#include "nodal_oracle.hpp"
#include "ringdesign/builders.hpp"
#include "ringdesign/elements.hpp"
#include "ringdesign/error.hpp"
#include "ringdesign/units.hpp"

using namespace ringdesign;

namespace {

const cplx j{0.0, 1.0};

}  // namespace

TEST_CASE("quarter-wave line chain matrix") {
    const TwoPortMatrix t = element_two_port(TLSection{50.0, pi / 2}, 1e9, 1e9);
    CHECK(std::abs(t.a) < 1e-15);
    CHECK(std::abs(t.b - 50.0 * j) < 1e-12);
    CHECK(std::abs(t.c - j / 50.0) < 1e-15);
    CHECK(std::abs(t.d) < 1e-15);
}

TEST_CASE("reciprocal elements have unit determinant") {
    const std::vector<Element> els{TLSection{37.0, 0.7}, OpenStub{80.0, 1.1},
                                   CSectionElement{70.0, 30.0, 0.9}, ShuntResistor{120.0}};
    for (const auto& e : els)
        for (double f : {0.3e9, 1e9, 1.7e9, 2.9e9})
            CHECK(std::abs(element_two_port(e, f, 1e9).determinant() - 1.0) < 1e-9);
}

TEST_CASE("rounded C-section acts as a 44.80 ohm line at f1 and 270 deg at f2") {
    const Element cs = CSectionElement{59.32, 33.83, deg_to_rad(52.94)};
    const TwoPortMatrix a = element_two_port(cs, 1e9, 1e9);
    const TwoPortMatrix q = element_two_port(TLSection{44.80, pi / 2}, 1e9, 1e9);
    CHECK(std::abs(a.a - q.a) < 1e-3);
    CHECK(std::abs(a.b - q.b) < 1e-3 * 44.8);
    CHECK(std::abs(a.c - q.c) < 1e-3);
    const TwoPortMatrix b = element_two_port(cs, 2.4e9, 1e9);
    const TwoPortMatrix q3 = element_two_port(TLSection{44.80, 3 * pi / 2}, 1e9, 1e9);
    CHECK(std::abs(b.a - q3.a) < 1e-3);
    CHECK(std::abs(b.b - q3.b) < 1e-3 * 44.8);
    CHECK(std::abs(b.c - q3.c) < 1e-3);
}

TEST_CASE("C-section closed form matches the coupled-line four-port") {
    for (double th : {0.3, 0.9, 1.4, 2.2}) {
        Network net;
        net.f1_hz = 1e9;
        net.add_node("a");
        net.add_node("b");
        net.add_port("a", 50.0);
        net.add_port("b", 50.0);
        net.add_branch(CSectionElement{72.0, 28.0, th}, "a", "b");
        const auto s = oracle::s_parameters(net, 1e9);
        const auto abcd = oracle::chain_from_s(s, 50.0);
        const TwoPortMatrix t = element_two_port(CSectionElement{72.0, 28.0, th}, 1e9, 1e9);
        CHECK(std::abs(abcd.a - t.a) < 1e-10);
        CHECK(std::abs(abcd.b - t.b) < 1e-8);
        CHECK(std::abs(abcd.c - t.c) < 1e-12);
        CHECK(std::abs(abcd.d - t.d) < 1e-10);
    }
}

TEST_CASE("pole detection") {
    const Element stub = OpenStub{50.0, pi / 2};
    CHECK(near_pole(stub, 1e9, 1e9));
    CHECK_FALSE(near_pole(stub, 1.01e9, 1e9));
    try {
        element_admittance(stub, 1e9, 1e9);
        FAIL("expected EvaluationSingular");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::evaluation_singular);
    }
    CHECK_THROWS_AS(element_y_params(TLSection{50.0, pi}, 1e9, 1e9), Error);
    CHECK_THROWS_AS(element_two_port(TLSection{50.0, 1.0}, 0.0, 1e9), Error);
}

TEST_CASE("chain to Y and S conversions") {
    const TwoPortMatrix t = element_two_port(TLSection{65.0, 0.8}, 1e9, 1e9);
    const YParams y = chain_to_y(t);
    const YParams direct = element_y_params(TLSection{65.0, 0.8}, 1e9, 1e9);
    CHECK(std::abs(y.y11 - direct.y11) < 1e-14);
    CHECK(std::abs(y.y12 - direct.y12) < 1e-14);
    const SParams2 s = chain_to_s(element_two_port(TLSection{50.0, pi / 2}, 1e9, 1e9), 50.0);
    CHECK(std::abs(s.s11) < 1e-12);
    CHECK(std::abs(s.s21 + j) < 1e-12);
}
