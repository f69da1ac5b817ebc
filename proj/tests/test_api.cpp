#include <doctest.h>

#include "ringdesign/api.hpp"
#include "ringdesign/json_io.hpp"

#include <httplib.h>

using namespace ringdesign;
using ringdesign::api::dispatch;

namespace {

const char* golden_body = R"({"device":"rrc","f1_hz":1e9,"f2_hz":2.4e9,"n1":2,"n2":0.5,"z0_ohm":50,"topology":"c"})";
const char* wlan_body = R"({"device":"rrc","f1_hz":2.4e9,"f2_hz":5.2e9,"n1_db":0,"n2_db":20,"topology":"c"})";

json body_of(const api::Response& r) { return json::parse(r.body); }

}  // namespace

TEST_CASE("health") {
    const auto r = dispatch("GET", "/healthz", {}, "");
    CHECK(r.status == 200);
    CHECK(r.body == "ok");
}

TEST_CASE("design endpoint") {
    const auto r = dispatch("POST", "/api/v1/design", {}, golden_body);
    REQUIRE(r.status == 200);
    const json j = body_of(r);
    CHECK(j["solution"]["theta_alpha_deg"].get<double>() == doctest::Approx(46.04).epsilon(1e-4));
    CHECK(j["shifter"]["z_even_ohm"].get<double>() == doctest::Approx(59.32).epsilon(1e-4));
    CHECK(j["residuals"]["dualband"].get<double>() < 1e-10);
    const json w = body_of(dispatch("POST", "/api/v1/design", {}, wlan_body));
    CHECK(w["solution"]["theta_alpha_deg"].get<double>() == doctest::Approx(79.21).epsilon(1e-4));
    CHECK(w["solution"]["z_beta_ohm"].get<double>() == doctest::Approx(79.32).epsilon(1e-4));
}

TEST_CASE("design errors") {
    const auto m1 = dispatch("POST", "/api/v1/design", {}, R"({"f1_hz":1e9,"f2_hz":1e9,"n1_db":0,"n2_db":0})");
    CHECK(m1.status == 422);
    CHECK(body_of(m1)["error"]["code"] == "RatioOutOfRange");
    CHECK(dispatch("POST", "/api/v1/design", {}, "{not json").status == 400);
    CHECK(dispatch("POST", "/api/v1/design", {}, R"({"f1_hz":1e9})").status == 400);
    CHECK(dispatch("GET", "/api/v1/design", {}, "").status == 405);
    CHECK(dispatch("GET", "/api/v1/nothing", {}, "").status == 404);
}

TEST_CASE("simulate endpoint") {
    const json j = body_of(dispatch("POST", "/api/v1/simulate", {}, R"({"f1_hz":1e9,"f2_hz":2.4e9,"n1_db":3,"n2_db":-3,
        "grid":{"fstart_hz":0.5e9,"fstop_hz":3e9,"points":201},"touchstone":true})"));
    REQUIRE(j.contains("sweep"));
    const auto& f = j["sweep"]["frequency_hz"];
    const auto& dr = j["sweep"]["channels"]["division_ratio_db"];
    CHECK(f[40].get<double>() == doctest::Approx(1e9));
    CHECK(dr[40].get<double>() == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(dr[152].get<double>() == doctest::Approx(-3.0).epsilon(1e-6));
    CHECK(j["exactness"]["max_entry_error"].get<double>() < 1e-9);
    CHECK(j["touchstone"]["filename"] == "design.s4p");
    CHECK(j.contains("residuals"));

    const json one = body_of(dispatch("POST", "/api/v1/simulate", {}, R"({"f1_hz":1e9,"f2_hz":2.4e9,"n1_db":3,"n2_db":-3,"grid":{"fstart_hz":1e9,"points":1}})"));
    CHECK(one["sweep"]["frequency_hz"].size() == 1);

    const json gpd = body_of(dispatch("POST", "/api/v1/simulate", {}, R"({"device":"gpd","f1_hz":1e9,"f2_hz":2.4e9,"n1_db":3,"n2_db":-3,"grid":{"fstart_hz":0.5e9,"fstop_hz":3e9,"points":201}})"));
    CHECK(gpd["sweep"]["channels"]["output_isolation_db"][40].get<double>() < -100.0);
    CHECK(gpd["sweep"]["channels"]["output_isolation_db"][152].get<double>() < -100.0);

    const json big = body_of(dispatch("POST", "/api/v1/simulate", {}, R"({"f1_hz":1e9,"f2_hz":2.4e9,"n1_db":3,"n2_db":-3,"grid":{"points":5001}})"));
    CHECK(big["sweep"]["returned_points"] == 2000);
}

TEST_CASE("sweep endpoints") {
    const auto r = dispatch("GET", "/api/v1/sweep/lengths", {{"k", "1,2,4,10"}}, "");
    REQUIRE(r.status == 200);
    const json j = body_of(r);
    CHECK(j["rows"].size() == 4 * 191);
    CHECK(dispatch("GET", "/api/v1/sweep/lengths", {{"k", "1,,x"}}, "").status == 400);
    CHECK(dispatch("GET", "/api/v1/sweep/lengths", {{"k", "1,2,"}}, "").status == 400);
    const auto csv = dispatch("GET", "/api/v1/sweep/shifter", {{"k", "1"}, {"topology", "t"}, {"format", "csv"}}, "");
    CHECK(csv.content_type == "text/csv");
    CHECK(csv.body.find("z_2t_ohm") != std::string::npos);
    const json s = body_of(dispatch("GET", "/api/v1/sweep/shifter", {{"k", "1"}, {"topology", "c"}}, ""));
    CHECK(s["feasible_bands"].size() == 1);
}

TEST_CASE("polarization endpoint") {
    std::string body = wlan_body;
    body.pop_back();
    body += R"(,"port":1,"quarter_wave":true})";
    const json j = body_of(dispatch("POST", "/api/v1/polarization", {}, body));
    REQUIRE(j["reports"].size() == 2);
    CHECK(std::abs(j["reports"][0]["axial_ratio_db"].get<double>()) < 1e-6);
    CHECK(j["reports"][0]["handedness"] == "LHCP");
    CHECK(j["reports"][1]["axial_ratio_db"].get<double>() == doctest::Approx(-20.0).epsilon(1e-6));
    std::string bad = wlan_body;
    bad.pop_back();
    bad += R"(,"device":"gpd","port":4})";
    const auto r = dispatch("POST", "/api/v1/polarization", {}, bad);
    CHECK(r.status == 422);
    CHECK(body_of(r)["error"]["code"] == "PortInvalid");
}

TEST_CASE("identical requests give identical responses") {
    CHECK(dispatch("POST", "/api/v1/design", {}, golden_body).body == dispatch("POST", "/api/v1/design", {}, golden_body).body);
}

TEST_CASE("loopback server") {
    api::ServerOptions opts;
    opts.port = 0;
    api::BackgroundServer server(opts);
    REQUIRE(server.port() > 0);
    httplib::Client cli("127.0.0.1", server.port());
    auto h = cli.Get("/healthz");
    REQUIRE(h);
    CHECK(h->status == 200);
    CHECK(h->body == "ok");
    CHECK(h->get_header_value("Access-Control-Allow-Origin") == "*");
    auto d = cli.Post("/api/v1/design", golden_body, "application/json");
    REQUIRE(d);
    CHECK(d->status == 200);
    CHECK(json::parse(d->body)["solution"].contains("theta_alpha_deg"));
    auto s = cli.Get("/api/v1/sweep/lengths?k=1,2&m_start=2&m_stop=2.5&m_step=0.1");
    REQUIRE(s);
    CHECK(json::parse(s->body)["rows"].size() == 12);
    auto e = cli.Post("/api/v1/design", R"({"f1_hz":1e9,"f2_hz":1e9,"n1_db":0,"n2_db":0})", "application/json");
    REQUIRE(e);
    CHECK(e->status == 422);
    server.stop();
}
