#include "ringdesign/export.hpp"

#include <cmath>
#include <fmt/format.h>

#include "ringdesign/error.hpp"

namespace ringdesign {

namespace {

std::string num(double v) { return fmt::format("{:.12e}", v); }

}  // namespace

std::string touchstone_extension(const SweepResult& sw) {
    return ".s" + std::to_string(sw.port_z0.size()) + "p";
}

void write_touchstone(std::ostream& os, const SweepResult& sw, std::optional<double> z_ref) {
    const std::size_t n = sw.port_z0.size();
    if (n == 0) throw Error(ErrorCode::invalid_argument, "sweep has no ports");
    double ref = sw.port_z0.front();
    if (z_ref) {
        if (!(*z_ref > 0.0)) throw Error(ErrorCode::invalid_argument, "reference impedance must be > 0");
        ref = *z_ref;
    } else {
        for (double z : sw.port_z0)
            if (z != ref)
                throw Error(ErrorCode::invalid_argument,
                            "ports have different reference impedances; give a common one");
    }
    const std::vector<double> target(n, ref);
    os << "! " << n << "-port S-parameters\n";
    os << "# HZ S RI R " << fmt::format("{:g}", ref) << "\n";
    for (const auto& pt : sw.points) {
        if (!pt.s) continue;
        const CMatrix s = renormalize(*pt.s, sw.port_z0, target);
        os << num(pt.frequency);
        auto put = [&](int r, int c) { os << ' ' << num(s(r, c).real()) << ' ' << num(s(r, c).imag()); };
        if (n == 2) {
            put(0, 0);
            put(1, 0);
            put(0, 1);
            put(1, 1);
            os << '\n';
            continue;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r > 0) os << std::string(22, ' ');
            for (std::size_t c = 0; c < n; ++c) put(static_cast<int>(r), static_cast<int>(c));
            os << '\n';
        }
    }
}

void write_metrics_csv(std::ostream& os, const MetricChannels& mc) {
    os << "frequency_hz";
    for (const auto& name : mc.names) os << ',' << name;
    os << '\n';
    for (std::size_t i = 0; i < mc.frequency.size(); ++i) {
        os << fmt::format("{:.6e}", mc.frequency[i]);
        for (const auto& name : mc.names) {
            const double v = mc[name][i];
            os << ',' << (std::isnan(v) ? std::string("nan") : fmt::format("{:.6g}", v));
        }
        os << '\n';
    }
}

}  // namespace ringdesign
