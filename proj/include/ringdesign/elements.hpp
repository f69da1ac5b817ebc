#pragma once

#include <complex>

#include "ringdesign/types.hpp"

namespace ringdesign {

using cplx = std::complex<double>;

/// Chain (ABCD) matrix of a two-port.
struct TwoPortMatrix {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};
    cplx c{0.0, 0.0};
    cplx d{1.0, 0.0};

    cplx determinant() const { return a * d - b * c; }
    TwoPortMatrix operator*(const TwoPortMatrix& rhs) const;
};

/// Short-circuit admittance parameters of a reciprocal two-port.
struct YParams {
    cplx y11, y12, y21, y22;
};

/// Angular distance (radians) to a tan/cot pole below which evaluation is refused.
inline constexpr double pole_tolerance = 1e-9;

/// True when the element's electrical length at f is within pole_tolerance of
/// an angle where its admittance stamp diverges.
bool near_pole(const Element& e, double f, double f1);

/// Chain matrix at frequency f. Stubs and resistors are returned as shunt
/// two-ports. Throws EvaluationSingular near a pole of the line equations.
TwoPortMatrix element_two_port(const Element& e, double f, double f1);

/// Y parameters of a two-port element (TL or C-section) at f.
YParams element_y_params(const Element& e, double f, double f1);

/// Admittance of a one-port element (stub or resistor) at f.
cplx element_admittance(const Element& e, double f, double f1);

/// Y parameters from a chain matrix; requires b != 0.
YParams chain_to_y(const TwoPortMatrix& t);

/// Two-port S parameters (s11, s21, s12, s22) of a chain matrix with real
/// reference impedance z_ref on both ports.
struct SParams2 {
    cplx s11, s12, s21, s22;
};
SParams2 chain_to_s(const TwoPortMatrix& t, double z_ref);

/// Image impedance sqrt(B/C) of a symmetric two-port (principal branch).
cplx image_impedance(const TwoPortMatrix& t);

}  // namespace ringdesign
