#pragma once

// Feed polarization of an orthogonally fed patch driven from two output ports
// of the coupler, with an optional quarter-wave line on the y feed.
//
// Convention: time dependence e^{+j w t}, wave receding along +z. A state is
// reported LHCP when Im(ex * conj(ey)) > 0, i.e. when the y feed lags x by up
// to 180 degrees, and RHCP when it is negative. The axial ratio reported here
// is the feed power ratio |ex|^2/|ey|^2 in dB, not the radiated ellipse ratio.

#include <complex>
#include <string>
#include <string_view>

#include "ringdesign/network.hpp"

namespace ringdesign {

struct JonesVector {
    cplx ex;
    cplx ey;  // normalized so |ex|^2 + |ey|^2 = 1
};

enum class Handedness { lhcp, rhcp, linear };
std::string_view handedness_name(Handedness h) noexcept;  // "LHCP", "RHCP", "linear"

/// Model of the quadrature line on the y feed.
enum class QuarterWaveModel {
    none,       // no line
    scaled,     // {z0, 90 deg at f1} line, phase scales with frequency
    dual_band,  // ideal dual-band quarter-wave equivalent, -90 deg at every band
};

struct PolarizationReport {
    double frequency = 0.0;
    int excited_port = 1;
    JonesVector field;
    double axial_ratio_db = 0.0;
    Handedness handedness = Handedness::linear;
};

/// Saturated value reported when one component vanishes.
inline constexpr double axial_ratio_sentinel_db = 200.0;

/// 10 log10(|ex|^2/|ey|^2); +-200 dB when a component vanishes.
double axial_ratio_db(const JonesVector& j);

/// |Im(ex conj(ey))| below which the state counts as linear.
inline constexpr double linear_tolerance = 1e-9;

Handedness classify(const JonesVector& j);

/// ex = S(x, exc), ey = S(y, exc) e^{-j theta(f)}, normalized.
/// Throws PortInvalid for out-of-range or coincident ports.
PolarizationReport feed_polarization(const SMatrix& s, int excited_port, int x_port, int y_port,
                                     QuarterWaveModel quarter_wave, double f, double f1);

/// Boolean form: quarter_wave selects the scaled line model.
PolarizationReport feed_polarization(const SMatrix& s, int excited_port, int x_port, int y_port,
                                     bool quarter_wave, double f, double f1);

}  // namespace ringdesign
