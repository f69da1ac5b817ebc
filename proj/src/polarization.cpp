#include "ringdesign/polarization.hpp"

#include <algorithm>
#include <cmath>

#include "ringdesign/error.hpp"
#include "ringdesign/units.hpp"

namespace ringdesign {

std::string_view handedness_name(Handedness h) noexcept {
    switch (h) {
        case Handedness::lhcp: return "LHCP";
        case Handedness::rhcp: return "RHCP";
        case Handedness::linear: return "linear";
    }
    return "linear";
}

double axial_ratio_db(const JonesVector& j) {
    const double px = std::norm(j.ex), py = std::norm(j.ey);
    if (py == 0.0 && px == 0.0) throw Error(ErrorCode::invalid_argument, "field is identically zero");
    if (py == 0.0) return axial_ratio_sentinel_db;
    if (px == 0.0) return -axial_ratio_sentinel_db;
    return std::clamp(10.0 * std::log10(px / py), -axial_ratio_sentinel_db, axial_ratio_sentinel_db);
}

Handedness classify(const JonesVector& j) {
    const double im = std::imag(j.ex * std::conj(j.ey));
    if (std::abs(im) <= linear_tolerance) return Handedness::linear;
    return im > 0.0 ? Handedness::lhcp : Handedness::rhcp;
}

PolarizationReport feed_polarization(const SMatrix& s, int excited, int x_port, int y_port,
                                     QuarterWaveModel qw, double f, double f1) {
    const int n = s.size();
    for (int p : {excited, x_port, y_port})
        if (p < 1 || p > n) throw Error(ErrorCode::port_invalid, "port " + std::to_string(p) + " is not in the network");
    if (excited == x_port || excited == y_port || x_port == y_port)
        throw Error(ErrorCode::port_invalid, "excited, x and y ports must be distinct");
    if (!(f > 0.0) || !(f1 > 0.0)) throw Error(ErrorCode::non_positive_frequency, "frequencies must be > 0");

    double theta = 0.0;
    if (qw == QuarterWaveModel::scaled) theta = pi / 2.0 * f / f1;
    if (qw == QuarterWaveModel::dual_band) theta = pi / 2.0;

    cplx ex = s(x_port, excited);
    cplx ey = s(y_port, excited) * std::polar(1.0, -theta);
    const double norm = std::sqrt(std::norm(ex) + std::norm(ey));
    if (!(norm > 0.0)) throw Error(ErrorCode::port_invalid, "no transmission to either feed port");
    ex /= norm;
    ey /= norm;

    PolarizationReport r;
    r.frequency = f;
    r.excited_port = excited;
    r.field = {ex, ey};
    r.axial_ratio_db = axial_ratio_db(r.field);
    r.handedness = classify(r.field);
    return r;
}

PolarizationReport feed_polarization(const SMatrix& s, int excited, int x_port, int y_port,
                                     bool quarter_wave, double f, double f1) {
    return feed_polarization(s, excited, x_port, y_port,
                             quarter_wave ? QuarterWaveModel::scaled : QuarterWaveModel::none, f, f1);
}

}  // namespace ringdesign
