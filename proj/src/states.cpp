#include "catamp/states.hpp"

#include <cmath>
#include <numbers>

namespace catamp {

namespace {
constexpr double kPi = std::numbers::pi;
}

SqueezingSpec::SqueezingSpec(double xi_p_db, double eps)
    : xi_p(xi_p_db), epsilon(eps) {
    if (xi_p > 0.0)
        throw DimensionError("SqueezingSpec: xi_p is the squeezed quadrature, must be <= 0 dB");
    if (epsilon < 1.0)
        throw DimensionError("SqueezingSpec: epsilon < 1 violates the Heisenberg bound");
}

CatSpec::CatSpec(double g, Parity p) : gamma(g), parity(p) {
    if (gamma < 0.0) throw DimensionError("CatSpec: gamma must be >= 0");
    if (parity == Parity::Odd && gamma == 0.0)
        throw DimensionError("CatSpec: the odd cat is undefined at gamma = 0");
}

double CatSpec::norm_sq() const {
    return 1.0 / (2.0 * (1.0 + parity_sign(parity) * std::exp(-2.0 * gamma * gamma)));
}

WignerObject vacuum() {
    GaussianTerm t{LogComplex::from_real(1.0 / kPi), -CMatrix::Identity(2, 2),
                   CVector::Zero(2)};
    return {{t}, 1, Kind::State};
}

WignerObject coherent(double gamma) {
    // (1/pi) exp(-(x - sqrt2 g)^2 - p^2)
    GaussianTerm t;
    t.quad = -CMatrix::Identity(2, 2);
    t.lin = CVector::Zero(2);
    t.lin(0) = 2.0 * std::numbers::sqrt2 * gamma;
    t.amplitude = LogComplex{std::log(1.0 / kPi) - 2.0 * gamma * gamma, 0.0};
    return {{t}, 1, Kind::State};
}

WignerObject squeezed_vacuum(const SqueezingSpec& s) {
    const double sx = s.s_x();
    const double sp = s.s_p();
    GaussianTerm t;
    t.quad = CMatrix::Zero(2, 2);
    t.quad(0, 0) = -1.0 / (sx * sx);
    t.quad(1, 1) = -1.0 / (sp * sp);
    t.lin = CVector::Zero(2);
    t.amplitude = LogComplex::from_real(1.0 / (kPi * sx * sp));
    return {{t}, 1, Kind::State};
}

namespace {

std::vector<GaussianTerm> cat_terms(const CatSpec& c) {
    const double g = c.gamma;
    const double sgn = parity_sign(c.parity);
    const double n2 = c.norm_sq();
    const double d = 2.0 * std::numbers::sqrt2 * g;  // lobe linear coefficient

    std::vector<GaussianTerm> ts(4);
    for (auto& t : ts) {
        t.quad = -CMatrix::Identity(2, 2);
        t.lin = CVector::Zero(2);
    }
    // Displaced lobes at x = +-sqrt2 g: (n2/pi) e^{-(x -+ sqrt2 g)^2 - p^2}.
    ts[0].lin(0) = d;
    ts[0].amplitude = LogComplex{std::log(n2 / kPi) - 2.0 * g * g, 0.0};
    ts[1].lin(0) = -d;
    ts[1].amplitude = ts[0].amplitude;
    // Interference: +-(2 n2/pi) e^{-x^2-p^2} cos(2 sqrt2 g p), split into
    // two conjugate terms with imaginary linear coefficient in p.
    ts[2].lin(1) = Cplx(0.0, d);
    ts[2].amplitude = LogComplex::from_real(sgn * n2 / kPi);
    ts[3].lin(1) = Cplx(0.0, -d);
    ts[3].amplitude = ts[2].amplitude;
    return ts;
}

}  // namespace

WignerObject cat(const CatSpec& c) { return {cat_terms(c), 1, Kind::State}; }

WignerObject op_apd() {
    GaussianTerm flat{LogComplex::from_real(1.0 / (2.0 * kPi)),
                      CMatrix::Zero(2, 2), CVector::Zero(2)};
    GaussianTerm vac{LogComplex::from_real(-1.0 / kPi),
                     -CMatrix::Identity(2, 2), CVector::Zero(2)};
    return {{flat, vac}, 1, Kind::Operator};
}

WignerObject op_cat_projector(const CatSpec& c) {
    return {cat_terms(c), 1, Kind::Operator};
}

MeasurementSpec op_homodyne_window(double q0_snu, double width_snu,
                                   double angle) {
    if (!(width_snu > 0.0))
        throw DimensionError("op_homodyne_window: width must be > 0 (use op_homodyne_exact)");
    return {q0_snu, width_snu, angle, false};
}

MeasurementSpec op_homodyne_exact(double q0_snu, double angle) {
    return {q0_snu, 0.0, angle, true};
}

}  // namespace catamp
