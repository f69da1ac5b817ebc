#include "ringdesign/api.hpp"

#include <cmath>
#include <sstream>

#include "ringdesign/builders.hpp"
#include "ringdesign/error.hpp"
#include "ringdesign/export.hpp"
#include "ringdesign/json_io.hpp"

namespace ringdesign::api {

namespace {

Response json_response(int status, const json& j) { return {status, dump_json(j), "application/json"}; }

Response error_response(const Error& e) {
    const bool client = e.code() == ErrorCode::parse_error || e.code() == ErrorCode::invalid_argument;
    return json_response(client ? 400 : 422, error_to_json(std::string(error_code_name(e.code())), e.what()));
}

template <class F>
Response guarded(F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        return error_response(e);
    } catch (const json::exception& e) {
        return json_response(400, error_to_json("ParseError", e.what()));
    } catch (const std::exception& e) {
        return json_response(500, error_to_json("Internal", e.what()));
    }
}

json parse_body(const std::string& body) {
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what());
    }
}

double num_field(const json& j, const char* key, double fallback) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return fallback;
    if (!it->is_number()) throw Error(ErrorCode::parse_error, std::string("field '") + key + "' must be a number");
    return it->get<double>();
}

int int_field(const json& j, const char* key, int fallback) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return fallback;
    if (!it->is_number_integer()) throw Error(ErrorCode::parse_error, std::string("field '") + key + "' must be an integer");
    return it->get<int>();
}

json residuals_of(const Design& d) {
    return {{"dualband", d.ring.residual_dualband}, {"impedance", d.ring.residual_impedance}};
}

double query_number(const Query& q, const std::string& key, double fallback) {
    auto it = q.find(key);
    if (it == q.end()) return fallback;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(it->second, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != it->second.size() || !std::isfinite(v))
        throw Error(ErrorCode::parse_error, "query parameter '" + key + "' is not a number");
    return v;
}

std::vector<double> query_list(const Query& q, const std::string& key, const std::string& fallback) {
    auto it = q.find(key);
    const std::string text = it == q.end() ? fallback : it->second;
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        Query one{{key, item}};
        out.push_back(query_number(one, key, 0.0));
    }
    if (out.empty() || (!text.empty() && text.back() == ','))
        throw Error(ErrorCode::parse_error, "query parameter '" + key + "' must be a comma-separated list");
    return out;
}

}  // namespace

Response handle_health() { return {200, "ok", "text/plain"}; }

Response handle_design(const std::string& body) {
    return guarded([&] {
        const DesignRequest req = parse_design_request(parse_body(body));
        const Design d = design(req.spec, {}, req.r_choice);
        json out = design_to_json(d, req.r_choice);
        return json_response(200, out);
    });
}

Response handle_simulate(const std::string& body) {
    return guarded([&] {
        const json in = parse_body(body);
        const DesignRequest req = parse_design_request(in);
        const Design d = design(req.spec, {}, req.r_choice);
        const json grid = in.value("grid", json::object());
        if (!grid.is_object()) throw Error(ErrorCode::parse_error, "'grid' must be an object");
        const double fstart = num_field(grid, "fstart_hz", 0.5 * d.spec.f1);
        const double fstop = num_field(grid, "fstop_hz", 1.25 * d.spec.f2);
        const int points = int_field(grid, "points", 201);
        if (points > max_grid_points) throw Error(ErrorCode::invalid_argument, "too many grid points");
        const FrequencyGrid fg = points == 1 ? FrequencyGrid::single(fstart) : FrequencyGrid::linear(fstart, fstop, points);

        RoleMap roles;
        if (d.spec.device == Device::gpd) roles.isolated.reset();
        if (auto it = in.find("roles"); it != in.end() && it->is_object()) {
            roles.input = int_field(*it, "input", roles.input);
            roles.through = int_field(*it, "through", roles.through);
            roles.coupled = int_field(*it, "coupled", roles.coupled);
            if (it->contains("isolated")) {
                if ((*it)["isolated"].is_null()) roles.isolated.reset();
                else roles.isolated = int_field(*it, "isolated", 4);
            }
        }

        const Network net = build_network(d);
        const SweepResult sw = sweep(net, fg);
        const MetricChannels mc = extract_metrics(sw, roles);
        std::size_t failed = 0;
        for (const auto& p : sw.points) failed += p.s ? 0 : 1;
        if (failed == sw.size())
            return json_response(422, error_to_json("SweepFailed", "every grid point failed: " + sw.points.front().error));

        json out;
        out["design"] = design_to_json(d, req.r_choice);
        out["sweep"] = metrics_to_json(sw, mc, max_chart_points);
        out["exactness"] = exactness_to_json(check_exactness(d));
        out["residuals"] = residuals_of(d);
        if (in.value("touchstone", false)) {
            std::ostringstream ts;
            write_touchstone(ts, sw);
            out["touchstone"] = {{"filename", "design" + touchstone_extension(sw)}, {"content", ts.str()}};
        }
        return json_response(200, out);
    });
}

Response handle_polarization(const std::string& body) {
    return guarded([&] {
        const json in = parse_body(body);
        const DesignRequest req = parse_design_request(in);
        const Design d = design(req.spec, {}, req.r_choice);
        const int port = int_field(in, "port", 1);
        const int x_port = int_field(in, "x_port", 2);
        const int y_port = int_field(in, "y_port", 3);
        QuarterWaveModel qw = QuarterWaveModel::scaled;
        if (auto it = in.find("quarter_wave"); it != in.end()) {
            if (it->is_boolean()) qw = it->get<bool>() ? QuarterWaveModel::scaled : QuarterWaveModel::none;
            else if (it->is_string() && *it == "none") qw = QuarterWaveModel::none;
            else if (it->is_string() && *it == "scaled") qw = QuarterWaveModel::scaled;
            else if (it->is_string() && *it == "dual_band") qw = QuarterWaveModel::dual_band;
            else throw Error(ErrorCode::parse_error, "quarter_wave must be a boolean or none|scaled|dual_band");
        }
        std::vector<double> freqs{d.spec.f1, d.spec.f2};
        if (auto it = in.find("frequency_hz"); it != in.end()) {
            freqs.clear();
            if (it->is_number()) freqs.push_back(it->get<double>());
            else if (it->is_array())
                for (const auto& f : *it) {
                    if (!f.is_number()) throw Error(ErrorCode::parse_error, "frequency_hz entries must be numbers");
                    freqs.push_back(f.get<double>());
                }
            else throw Error(ErrorCode::parse_error, "frequency_hz must be a number or an array");
        }
        const Network net = build_network(d);
        json reports = json::array();
        for (double f : freqs) {
            const SMatrix s = assemble_sparams(net, f);
            reports.push_back(polarization_to_json(feed_polarization(s, port, x_port, y_port, qw, f, d.spec.f1)));
        }
        return json_response(200, json{{"reports", reports}, {"residuals", residuals_of(d)}});
    });
}

Response handle_sweep(const std::string& figure, const Query& q) {
    return guarded([&] {
        const SpaceFigure fig = parse_space_figure(figure);
        const auto ks = query_list(q, "k", "1,2,4,10");
        const auto ms = m_grid(query_number(q, "m_start", 1.1), query_number(q, "m_stop", 3.0),
                               query_number(q, "m_step", 0.01));
        const double n1 = query_number(q, "n1", 1.0);
        const double z0 = query_number(q, "z0", 50.0);
        SpaceTable t;
        if (fig == SpaceFigure::lengths) {
            t = sweep_lengths(ms, ks);
        } else if (fig == SpaceFigure::impedances) {
            t = sweep_impedances(ms, ks, n1, z0);
        } else {
            auto it = q.find("topology");
            const Topology topo = parse_topology(it == q.end() ? "c" : it->second);
            const ImpedanceWindow w{query_number(q, "z_min", 20.0), query_number(q, "z_max", 150.0)};
            t = sweep_shifter(topo, ms, ks, n1, z0, w);
        }
        if (auto it = q.find("format"); it != q.end() && it->second == "csv") {
            std::ostringstream os;
            write_space_csv(os, t);
            return Response{200, os.str(), "text/csv"};
        }
        return json_response(200, space_table_to_json(t));
    });
}

Response dispatch(const std::string& method, const std::string& path, const Query& query,
                  const std::string& body) {
    auto only = [&](const char* m, auto&& f) -> Response {
        if (method != m) return json_response(405, error_to_json("MethodNotAllowed", "use " + std::string(m)));
        return f();
    };
    if (path == "/healthz") return only("GET", [] { return handle_health(); });
    if (path == "/api/v1/design") return only("POST", [&] { return handle_design(body); });
    if (path == "/api/v1/simulate") return only("POST", [&] { return handle_simulate(body); });
    if (path == "/api/v1/polarization") return only("POST", [&] { return handle_polarization(body); });
    const std::string prefix = "/api/v1/sweep/";
    if (path.rfind(prefix, 0) == 0) {
        const std::string fig = path.substr(prefix.size());
        if (fig == "lengths" || fig == "impedances" || fig == "shifter")
            return only("GET", [&] { return handle_sweep(fig, query); });
    }
    return json_response(404, error_to_json("NotFound", "no route for " + path));
}

}  // namespace ringdesign::api
