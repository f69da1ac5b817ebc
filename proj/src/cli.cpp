#include "ringdesign/cli.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fstream>
#include <sstream>

#include "ringdesign/api.hpp"
#include "ringdesign/builders.hpp"
#include "ringdesign/error.hpp"
#include "ringdesign/export.hpp"
#include "ringdesign/json_io.hpp"
#include "ringdesign/units.hpp"

namespace ringdesign {

namespace {

struct DesignFlags {
    std::string design_file;
    std::string device = "rrc";
    std::optional<double> f1, f2, n1_db, n2_db, n1, n2, zgamma;
    double z0 = 50.0;
    std::string topology = "c";
    std::string r_choice;

    void add_to(CLI::App* app, bool allow_file) {
        if (allow_file) app->add_option("--design", design_file, "Design JSON written by the design command");
        app->add_option("--device", device, "rrc or gpd")->check(CLI::IsMember({"rrc", "gpd"}));
        app->add_option("--f1", f1, "First design frequency in Hz");
        app->add_option("--f2", f2, "Second design frequency in Hz");
        app->add_option("--n1-db", n1_db, "Power-division ratio at f1 in dB");
        app->add_option("--n2-db", n2_db, "Power-division ratio at f2 in dB");
        app->add_option("--n1", n1, "Power-division ratio at f1, linear");
        app->add_option("--n2", n2, "Power-division ratio at f2, linear");
        app->add_option("--z0", z0, "Port impedance in ohms");
        app->add_option("--topology", topology, "c, pi, t or tl")->check(CLI::IsMember({"c", "pi", "t", "tl"}));
        app->add_option("--zgamma", zgamma, "Shifter reference impedance in ohms");
        app->add_option("--r-choice", r_choice, "balanced or n=<value>");
    }

    DesignRequest request() const {
        if (!design_file.empty()) {
            std::ifstream in(design_file);
            if (!in) throw Error(ErrorCode::parse_error, "cannot read design file '" + design_file + "'");
            json j;
            try {
                j = json::parse(in);
            } catch (const json::parse_error& e) {
                throw Error(ErrorCode::parse_error, "design file is not valid JSON: " + std::string(e.what()));
            }
            DesignRequest req = parse_design_request(j);
            if (!r_choice.empty()) req.r_choice = parse_r_choice(r_choice);
            return req;
        }
        if (!f1 || !f2) throw Error(ErrorCode::parse_error, "--f1 and --f2 are required (or --design)");
        auto ratio = [](const std::optional<double>& lin, const std::optional<double>& db, const char* name) {
            if (lin && db) throw Error(ErrorCode::parse_error, std::string("give either --") + name + " or --" + name + "-db");
            if (lin) return *lin;
            if (db) return db_to_ratio(*db);
            throw Error(ErrorCode::parse_error, std::string("--") + name + "-db (or --" + name + ") is required");
        };
        DesignRequest req;
        const double r1 = ratio(n1, n1_db, "n1");
        const double r2 = ratio(n2, n2_db, "n2");
        req.r_choice = r_choice.empty() ? ResistorChoice::balanced() : parse_r_choice(r_choice);
        req.spec = make_spec(parse_device(device), *f1, *f2, r1, r2, z0, parse_topology(topology), zgamma);
        return req;
    }
};

void write_output(const std::string& path, const std::string& data, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << data;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::invalid_argument, "cannot write '" + path + "'");
    f << data;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw Error(ErrorCode::parse_error, "bad list entry '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw Error(ErrorCode::parse_error, "empty list");
    return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dual-band ring coupler and Gysel divider design tool", "ringdesign"};
    app.require_subcommand(1);

    DesignFlags design_flags;
    auto* cmd_design = app.add_subcommand("design", "Solve a design and print it as JSON");
    design_flags.add_to(cmd_design, false);
    std::string design_output, netlist_output;
    cmd_design->add_option("-o,--output", design_output, "Output file (default stdout)");
    cmd_design->add_option("--netlist-out", netlist_output, "Also write the circuit netlist JSON here");

    DesignFlags sim_flags;
    auto* cmd_sim = app.add_subcommand("simulate", "Sweep a design and write Touchstone or metric CSV");
    sim_flags.add_to(cmd_sim, true);
    std::optional<double> fstart, fstop, z_ref;
    int points = 201;
    std::string sim_format = "touchstone", sim_output, netlist_file;
    cmd_sim->add_option("--netlist", netlist_file, "Simulate a netlist JSON file instead of a design");
    cmd_sim->add_option("--fstart", fstart, "Sweep start in Hz (default 0.5 f1)");
    cmd_sim->add_option("--fstop", fstop, "Sweep stop in Hz (default 1.25 f2)");
    cmd_sim->add_option("--points", points, "Number of points")->check(CLI::Range(1, api::max_grid_points));
    cmd_sim->add_option("--out", sim_format, "touchstone or csv")->check(CLI::IsMember({"touchstone", "csv"}));
    cmd_sim->add_option("--z-ref", z_ref, "Touchstone reference impedance override");
    cmd_sim->add_option("-o,--output", sim_output, "Output file (default stdout)");

    auto* cmd_space = app.add_subcommand("sweep-space", "Design-space tables as CSV");
    std::string figure = "lengths", space_topology = "c", k_list = "1,2,4,10", space_output;
    double m_start = 1.1, m_stop = 3.0, m_step = 0.01, space_n1 = 1.0, space_z0 = 50.0;
    double z_min = 20.0, z_max = 150.0;
    cmd_space->add_option("--figure", figure, "lengths, impedances or shifter")
        ->check(CLI::IsMember({"lengths", "impedances", "shifter"}));
    cmd_space->add_option("--topology", space_topology, "Shifter topology for --figure shifter")
        ->check(CLI::IsMember({"c", "pi", "t", "tl"}));
    cmd_space->add_option("--k", k_list, "Comma-separated k = n2/n1 values");
    cmd_space->add_option("--m-start", m_start);
    cmd_space->add_option("--m-stop", m_stop);
    cmd_space->add_option("--m-step", m_step);
    cmd_space->add_option("--n1", space_n1, "Linear n1");
    cmd_space->add_option("--z0", space_z0);
    cmd_space->add_option("--z-min", z_min, "Realizable window lower bound (ohm)");
    cmd_space->add_option("--z-max", z_max, "Realizable window upper bound (ohm)");
    cmd_space->add_option("-o,--output", space_output, "Output file (default stdout)");

    DesignFlags pol_flags;
    auto* cmd_pol = app.add_subcommand("polarization", "Feed polarization report as JSON");
    pol_flags.add_to(cmd_pol, true);
    int pol_port = 1, x_port = 2, y_port = 3;
    bool quarter_wave = false;
    std::string qw_model = "scaled";
    std::vector<double> pol_freqs;
    cmd_pol->add_option("--port", pol_port, "Excited port")->check(CLI::IsMember({1, 4}));
    cmd_pol->add_option("--x-port", x_port);
    cmd_pol->add_option("--y-port", y_port);
    cmd_pol->add_flag("--quarter-wave", quarter_wave, "Insert the quadrature line on the y feed");
    cmd_pol->add_option("--qw-model", qw_model, "scaled or dual_band")->check(CLI::IsMember({"scaled", "dual_band"}));
    cmd_pol->add_option("--frequency", pol_freqs, "Frequencies in Hz (default f1 and f2)");

    auto* cmd_serve = app.add_subcommand("serve", "Start the HTTP API");
    std::string bind = "127.0.0.1:8080", static_dir;
    cmd_serve->add_option("--bind", bind, "host:port");
    cmd_serve->add_option("--static-dir", static_dir, "Directory served at /");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmd_design) {
            const DesignRequest req = design_flags.request();
            const Design d = design(req.spec, {}, req.r_choice);
            for (const auto& w : d.warnings) err << "warning: " << w << "\n";
            write_output(design_output, dump_json(design_to_json(d, req.r_choice)) + "\n", out);
            if (!netlist_output.empty())
                write_output(netlist_output, dump_json(network_to_json(build_network(d))) + "\n", out);
        } else if (*cmd_sim) {
            Network net;
            double a = 0.0, b = 0.0;
            if (!netlist_file.empty()) {
                std::ifstream in(netlist_file);
                if (!in) throw Error(ErrorCode::parse_error, "cannot read netlist file '" + netlist_file + "'");
                net = network_from_json(json::parse(in));
                if (!fstart || (points > 1 && !fstop))
                    throw Error(ErrorCode::parse_error, "--netlist needs --fstart and --fstop");
                a = *fstart;
                b = fstop.value_or(a);
            } else {
                const DesignRequest req = sim_flags.request();
                const Design d = design(req.spec, {}, req.r_choice);
                net = build_network(d);
                a = fstart.value_or(0.5 * d.spec.f1);
                b = fstop.value_or(1.25 * d.spec.f2);
            }
            const FrequencyGrid grid = points == 1 ? FrequencyGrid::single(a) : FrequencyGrid::linear(a, b, points);
            const SweepResult sw = sweep(net, grid);
            std::ostringstream os;
            if (sim_format == "touchstone") {
                write_touchstone(os, sw, z_ref);
            } else {
                if (net.ports.size() < 3) throw Error(ErrorCode::role_map_invalid, "metric CSV needs at least three ports");
                RoleMap roles;
                if (net.ports.size() < 4) roles.isolated.reset();
                write_metrics_csv(os, extract_metrics(sw, roles));
            }
            for (const auto& p : sw.points) {
                if (p.perturbed)
                    err << fmt::format("note: point {:.12g} Hz evaluated at {:.12g} Hz\n", p.frequency, p.evaluated_frequency);
                if (!p.s) err << "warning: point " << p.frequency << " Hz failed: " << p.error << "\n";
            }
            write_output(sim_output, os.str(), out);
        } else if (*cmd_space) {
            const auto ks = parse_list(k_list);
            const auto ms = m_grid(m_start, m_stop, m_step);
            SpaceTable t;
            const SpaceFigure fig = parse_space_figure(figure);
            if (fig == SpaceFigure::lengths) t = sweep_lengths(ms, ks);
            else if (fig == SpaceFigure::impedances) t = sweep_impedances(ms, ks, space_n1, space_z0);
            else t = sweep_shifter(parse_topology(space_topology), ms, ks, space_n1, space_z0, {z_min, z_max});
            std::ostringstream os;
            write_space_csv(os, t);
            write_output(space_output, os.str(), out);
        } else if (*cmd_pol) {
            const DesignRequest req = pol_flags.request();
            const Design d = design(req.spec, {}, req.r_choice);
            const Network net = build_network(d);
            const QuarterWaveModel qw = !quarter_wave ? QuarterWaveModel::none
                                        : qw_model == "dual_band" ? QuarterWaveModel::dual_band
                                                                  : QuarterWaveModel::scaled;
            if (pol_freqs.empty()) pol_freqs = {d.spec.f1, d.spec.f2};
            json reports = json::array();
            for (double f : pol_freqs)
                reports.push_back(polarization_to_json(
                    feed_polarization(assemble_sparams(net, f), pol_port, x_port, y_port, qw, f, d.spec.f1)));
            out << dump_json(json{{"reports", reports}}) << "\n";
        } else if (*cmd_serve) {
            const auto colon = bind.rfind(':');
            if (colon == std::string::npos) throw Error(ErrorCode::parse_error, "--bind expects host:port");
            api::ServerOptions so;
            so.host = bind.substr(0, colon);
            try {
                so.port = std::stoi(bind.substr(colon + 1));
            } catch (const std::exception&) {
                throw Error(ErrorCode::parse_error, "--bind port is not a number");
            }
            so.static_dir = static_dir;
            if (!api::run_server(so)) throw Error(ErrorCode::invalid_argument, "could not bind " + bind);
        }
    } catch (const Error& e) {
        err << dump_json(error_to_json(std::string(error_code_name(e.code())), e.what()), -1) << "\n";
        return e.code() == ErrorCode::parse_error ? 2 : 1;
    } catch (const std::exception& e) {
        err << dump_json(error_to_json("Internal", e.what()), -1) << "\n";
        return 1;
    }
    return 0;
}

}  // namespace ringdesign
