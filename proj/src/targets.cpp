#include "ringdesign/targets.hpp"

#include <algorithm>
#include <cmath>

#include "ringdesign/builders.hpp"
#include "ringdesign/units.hpp"

namespace ringdesign {

CMatrix rrc_target(double n, double phi) {
    const double r = std::sqrt(n);
    CMatrix t(4, 4);
    t << 0, 1, r, 0,
         1, 0, 0, -r,
         r, 0, 0, 1,
         0, -r, 1, 0;
    return t * (std::polar(1.0, -phi) / std::sqrt(1.0 + n));
}

CMatrix gpd_target(double n, double phi) {
    const double r = std::sqrt(n);
    CMatrix t(3, 3);
    t << 0, 1, r,
         1, 0, 0,
         r, 0, 0;
    return t * (std::polar(1.0, -phi) / std::sqrt(1.0 + n));
}

double target_error(const CMatrix& s, const CMatrix& target_zero_phase) {
    const cplx s21 = s(1, 0);
    const cplx rot = std::abs(s21) > 0.0 ? s21 / std::abs(s21) : cplx{1.0, 0.0};
    return (s - rot * target_zero_phase).cwiseAbs().maxCoeff();
}

ExactnessReport check_exactness(const Design& d) {
    const Network net = build_network(d);
    const bool divider = d.spec.device == Device::gpd;
    struct Band {
        double f, n, phi;
    };
    std::vector<Band> bands{{d.spec.f1, d.spec.n1, d.ring.phi1}};
    if (d.spec.topology != Topology::ideal_tl) bands.push_back({d.spec.f2, d.spec.n2, d.ring.phi2});

    ExactnessReport rep;
    for (const auto& b : bands) {
        const SMatrix sm = assemble_sparams(net, b.f);
        const CMatrix target = divider ? gpd_target(b.n, 0.0) : rrc_target(b.n, 0.0);
        BandCheck bc;
        bc.frequency = b.f;
        bc.max_entry_error = target_error(sm.s, target);
        bc.phase_error_deg = wrap_deg(rad_to_deg(-std::arg(sm.s(1, 0)) - b.phi));
        bc.s11_db = 20.0 * std::log10(std::max(std::abs(sm.s(0, 0)), 1e-20));
        if (divider) bc.s23_db = 20.0 * std::log10(std::max(std::abs(sm.s(1, 2)), 1e-20));
        rep.max_entry_error = std::max(rep.max_entry_error, bc.max_entry_error);
        rep.bands.push_back(bc);
    }
    return rep;
}

}  // namespace ringdesign
