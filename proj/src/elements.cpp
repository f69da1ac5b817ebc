#include "ringdesign/elements.hpp"

#include <cmath>
#include <sstream>

#include "ringdesign/error.hpp"
#include "ringdesign/units.hpp"

namespace ringdesign {

namespace {

constexpr cplx j{0.0, 1.0};

// Distance from theta to the nearest multiple of pi (zeros of sin).
double dist_to_sin_zero(double theta) { return std::abs(theta - std::round(theta / pi) * pi); }

// Distance from theta to the nearest odd multiple of pi/2 (zeros of cos).
double dist_to_cos_zero(double theta) { return dist_to_sin_zero(theta - pi / 2.0); }

[[noreturn]] void throw_pole(double theta, double f) {
    std::ostringstream os;
    os << "electrical length " << rad_to_deg(theta) << " deg at " << f << " Hz sits on a pole";
    throw Error(ErrorCode::evaluation_singular, os.str());
}

}  // namespace

TwoPortMatrix TwoPortMatrix::operator*(const TwoPortMatrix& r) const {
    return {a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
}

bool near_pole(const Element& e, double f, double f1) {
    const double theta = electrical_length(e, f, f1);
    if (std::holds_alternative<TLSection>(e)) return dist_to_sin_zero(theta) < pole_tolerance;
    if (std::holds_alternative<OpenStub>(e)) return dist_to_cos_zero(theta) < pole_tolerance;
    if (std::holds_alternative<CSectionElement>(e))
        return dist_to_sin_zero(theta) < pole_tolerance || dist_to_cos_zero(theta) < pole_tolerance;
    return false;
}

TwoPortMatrix element_two_port(const Element& e, double f, double f1) {
    if (!(f > 0.0)) throw Error(ErrorCode::non_positive_frequency, "evaluation frequency must be > 0");
    const double theta = electrical_length(e, f, f1);
    if (const auto* tl = std::get_if<TLSection>(&e)) {
        const double c = std::cos(theta), s = std::sin(theta);
        return {c, j * tl->z * s, j * s / tl->z, c};
    }
    if (const auto* cs = std::get_if<CSectionElement>(&e)) {
        // Far-end-joined coupled pair: even mode sees an open, odd mode a short.
        const double c = std::cos(theta), s = std::sin(theta);
        const double den = cs->z_even * c * c + cs->z_odd * s * s;
        const double a = (cs->z_even * c * c - cs->z_odd * s * s) / den;
        return {a, 2.0 * j * cs->z_even * cs->z_odd * s * c / den, 2.0 * j * s * c / den, a};
    }
    if (const auto* stub = std::get_if<OpenStub>(&e)) {
        if (dist_to_cos_zero(theta) < pole_tolerance) throw_pole(theta, f);
        return {1.0, 0.0, j * std::tan(theta) / stub->z, 1.0};
    }
    const auto& r = std::get<ShuntResistor>(e);
    return {1.0, 0.0, 1.0 / r.r, 1.0};
}

YParams element_y_params(const Element& e, double f, double f1) {
    if (!is_two_port(e)) throw Error(ErrorCode::invalid_argument, "element is not a two-port");
    const double theta = electrical_length(e, f, f1);
    if (near_pole(e, f, f1)) throw_pole(theta, f);
    if (const auto* tl = std::get_if<TLSection>(&e)) {
        const cplx self = -j / (std::tan(theta) * tl->z);
        const cplx mutual = j / (std::sin(theta) * tl->z);
        return {self, mutual, mutual, self};
    }
    const auto& cs = std::get<CSectionElement>(e);
    const cplx y_even = j * std::tan(theta) / cs.z_even;
    const cplx y_odd = -j / (std::tan(theta) * cs.z_odd);
    const cplx self = 0.5 * (y_even + y_odd);
    const cplx mutual = 0.5 * (y_even - y_odd);
    return {self, mutual, mutual, self};
}

cplx element_admittance(const Element& e, double f, double f1) {
    if (const auto* stub = std::get_if<OpenStub>(&e)) {
        const double theta = electrical_length(e, f, f1);
        if (dist_to_cos_zero(theta) < pole_tolerance) throw_pole(theta, f);
        return j * std::tan(theta) / stub->z;
    }
    if (const auto* r = std::get_if<ShuntResistor>(&e)) return 1.0 / r->r;
    throw Error(ErrorCode::invalid_argument, "element is not a one-port");
}

YParams chain_to_y(const TwoPortMatrix& t) {
    if (std::abs(t.b) == 0.0) throw Error(ErrorCode::evaluation_singular, "B = 0, no Y parameters");
    const cplx det = t.determinant();
    return {t.d / t.b, -det / t.b, -1.0 / t.b, t.a / t.b};
}

SParams2 chain_to_s(const TwoPortMatrix& t, double z) {
    const cplx den = t.a + t.b / z + t.c * z + t.d;
    return {(t.a + t.b / z - t.c * z - t.d) / den, 2.0 * t.determinant() / den, 2.0 / den,
            (-t.a + t.b / z - t.c * z + t.d) / den};
}

cplx image_impedance(const TwoPortMatrix& t) { return std::sqrt(t.b / t.c); }

}  // namespace ringdesign
