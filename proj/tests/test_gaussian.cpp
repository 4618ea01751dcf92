#include "catamp/gaussian.hpp"
#include "catamp/numerics.hpp"
#include "catamp/states.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace catamp;

namespace {

constexpr double kPi = std::numbers::pi;

RVector pt(double x, double p) {
    RVector q(2);
    q << x, p;
    return q;
}

RVector pt4(double a, double b, double c, double d) {
    RVector q(4);
    q << a, b, c, d;
    return q;
}

// Random single-mode mixed state: convex mixture of displaced/squeezed
// Gaussians (each a legitimate state, so the mixture is one too).
WignerObject random_mixed_state(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int n = 1 + static_cast<int>(u(rng) * 4);
    std::vector<GaussianTerm> terms;
    std::vector<double> w(n);
    double wsum = 0.0;
    for (auto& x : w) wsum += (x = 0.05 + u(rng));
    for (int i = 0; i < n; ++i) {
        const double g = 2.0 * u(rng) - 1.0;
        GaussianTerm t;
        t.quad = -CMatrix::Identity(2, 2);
        t.lin = CVector::Zero(2);
        t.lin(0) = 2.0 * std::numbers::sqrt2 * g;
        t.amplitude = LogComplex{std::log(w[i] / wsum / kPi) - 2.0 * g * g, 0.0};
        terms.push_back(t);
    }
    return {terms, 1, Kind::State};
}

}  // namespace

TEST_CASE("vacuum Wigner basics") {
    const WignerObject v = vacuum();
    CHECK(std::abs(evaluate(v, pt(0, 0)).real() - 1.0 / kPi) < 1e-15);
    CHECK(std::abs(integrate_all_log(v).to_complex().real() - 1.0) < 1e-12);
    CHECK(std::abs(purity(v) - 1.0) < 1e-12);
}

TEST_CASE("tensor") {
    const WignerObject vv = tensor(vacuum(), vacuum());
    CHECK(vv.modes() == 2);
    CHECK(std::abs(evaluate(vv, pt4(0, 0, 0, 0)).real() - 1.0 / (kPi * kPi)) <
          1e-15);

    const WignerObject w = cat(CatSpec(1.0, Parity::Odd));
    const WignerObject u = tensor(w, WignerObject::unit());
    CHECK(u.modes() == 1);
    CHECK(std::abs(evaluate(u, pt(0.3, -0.2)).real() -
                   evaluate(w, pt(0.3, -0.2)).real()) < 1e-14);

    const WignerObject cv = tensor(cat(CatSpec(1.0, Parity::Odd)), vacuum());
    CHECK(cv.term_count() == 4);
    CHECK(std::abs(integrate_all_log(cv).to_complex().real() - 1.0) < 1e-10);
}

TEST_CASE("apply_linear") {
    RMatrix bs(4, 4);
    const double c = std::sqrt(0.5);
    bs.setZero();
    for (int q = 0; q < 2; ++q) {
        bs(0 + q, 0 + q) = c;
        bs(0 + q, 2 + q) = -c;
        bs(2 + q, 0 + q) = c;
        bs(2 + q, 2 + q) = c;
    }
    const SymplecticMap m(bs);
    const WignerObject vv = tensor(vacuum(), vacuum());
    const WignerObject out = apply_linear(vv, m);
    for (double x : {-0.7, 0.0, 1.3})
        CHECK(std::abs(evaluate(out, pt4(x, 0.2, -x, 0.4)).real() -
                       evaluate(vv, pt4(x, 0.2, -x, 0.4)).real()) < 1e-13);

    // m then m^-1 is the identity.
    const SymplecticMap minv(m.inverse());
    const WignerObject back =
        apply_linear(apply_linear(cat(CatSpec(0.8, Parity::Even)),
                                  SymplecticMap(RMatrix::Identity(2, 2) * 1.7)),
                     SymplecticMap(RMatrix::Identity(2, 2) / 1.7));
    const WignerObject orig = cat(CatSpec(0.8, Parity::Even));
    for (double x : {-1.0, 0.3})
        CHECK(std::abs(evaluate(back, pt(x, x / 2)).real() -
                       evaluate(orig, pt(x, x / 2)).real()) < 1e-12);

    // Composition maps equal chained maps.
    std::mt19937 rng(5);
    std::normal_distribution<double> g;
    RMatrix a = RMatrix::Identity(2, 2) + 0.1 * RMatrix::NullaryExpr(2, 2, [&](int, int) { return g(rng); });
    RMatrix b = RMatrix::Identity(2, 2) + 0.1 * RMatrix::NullaryExpr(2, 2, [&](int, int) { return g(rng); });
    const SymplecticMap ma(a), mb(b);
    const WignerObject w1 = apply_linear(apply_linear(orig, ma), mb);
    const WignerObject w2 = apply_linear(orig, ma.then(mb));
    for (double x : {-0.9, 0.1, 2.0})
        CHECK(std::abs(evaluate(w1, pt(x, -x)).real() -
                       evaluate(w2, pt(x, -x)).real()) < 1e-12);
}

TEST_CASE("multiply") {
    const WignerObject v = vacuum();
    const WignerObject one = WignerObject::constant_op(1);
    const WignerObject same = multiply(v, one);
    CHECK(std::abs(evaluate(same, pt(0.4, 0.1)).real() -
                   evaluate(v, pt(0.4, 0.1)).real()) < 1e-15);
    CHECK(std::abs(evaluate(multiply(v, v), pt(0, 0)).real() - 1.0 / (kPi * kPi)) <
          1e-15);
    CHECK(multiply(cat(CatSpec(1.0, Parity::Even)), op_apd()).term_count() == 8);
}

TEST_CASE("integrate_subset closed forms") {
    const WignerObject v = vacuum();
    const WignerObject scalar = integrate_subset(v, {0, 1});
    CHECK(scalar.modes() == 0);
    CHECK(std::abs(scalar.terms()[0].amplitude.to_complex().real() - 1.0) <
          1e-13);

    // p-marginal of vacuum is (1/sqrt(pi)) e^{-x^2}.
    const auto marg = integrate_terms(v.terms(), {1}, 2);
    REQUIRE(marg.size() == 1);
    for (double x : {0.0, 0.5, -1.2}) {
        const Cplx val = marg[0].amplitude.to_complex() *
                         std::exp(marg[0].quad(0, 0) * x * x +
                                  marg[0].lin(0) * x);
        CHECK(std::abs(val.real() - std::exp(-x * x) / std::sqrt(kPi)) < 1e-13);
    }

    CHECK_THROWS_AS(integrate_subset(WignerObject::constant_op(1), {0, 1}),
                    NonIntegrableError);
}

TEST_CASE("integrate_subset vs nested quadrature on random 2-mode objects") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 3; ++rep) {
        const WignerObject in =
            tensor(random_mixed_state(rng), random_mixed_state(rng));
        RMatrix bs(4, 4);
        bs.setZero();
        const double th = 0.3 + 0.5 * rep;
        for (int q = 0; q < 2; ++q) {
            bs(0 + q, 0 + q) = std::cos(th);
            bs(0 + q, 2 + q) = -std::sin(th);
            bs(2 + q, 0 + q) = std::sin(th);
            bs(2 + q, 2 + q) = std::cos(th);
        }
        const WignerObject mixed = apply_linear(in, SymplecticMap(bs));
        const WignerObject reduced = integrate_subset(mixed, {2, 3});
        for (int s = 0; s < 3; ++s) {
            const double x = u(rng), p = u(rng);
            const double closed = evaluate(reduced, pt(x, p)).real();
            const double quad = integrate_1d(
                [&](double x2) {
                    return integrate_1d(
                        [&](double p2) {
                            return evaluate(mixed, pt4(x, p, x2, p2)).real();
                        },
                        -8.0, 8.0, 1e-11);
                },
                -8.0, 8.0, 1e-10);
            CHECK(std::abs(closed - quad) <=
                  1e-7 * std::max(1e-4, std::abs(closed)));
        }
        // Trace of the reduction is 1.
        CHECK(std::abs(integrate_all_log(reduced).to_complex().real() - 1.0) <
              1e-10);
    }
}

TEST_CASE("overlap and purity") {
    CHECK(std::abs(overlap(vacuum(), vacuum()) - 1.0) < 1e-12);
    CHECK(std::abs(overlap(cat(CatSpec(1.0, Parity::Odd)),
                           cat(CatSpec(1.0, Parity::Even)))) < 1e-12);
    for (double g : {0.3, 1.0, 1.7})
        CHECK(std::abs(overlap(coherent(g), coherent(-g)) -
                       std::exp(-4.0 * g * g)) < 1e-12);

    std::mt19937 rng(31);
    for (int i = 0; i < 100; ++i) {
        const WignerObject a = random_mixed_state(rng);
        const WignerObject b = random_mixed_state(rng);
        CHECK(std::abs(overlap(a, b) - overlap(b, a)) < 1e-12);
        const double p = purity(a);
        CHECK(p > 0.0);
        CHECK(p <= 1.0 + 1e-9);
    }
}

TEST_CASE("hermiticity on random points") {
    std::mt19937 rng(407);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (const WignerObject& w :
         {vacuum(), cat(CatSpec(1.3, Parity::Even)),
          cat(CatSpec(2.0, Parity::Odd)), op_apd(),
          squeezed_vacuum(SqueezingSpec(-4.0, 1.5))}) {
        double max_re = 0.0, max_im = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const Cplx v = evaluate(w, pt(u(rng), u(rng)));
            max_re = std::max(max_re, std::abs(v.real()));
            max_im = std::max(max_im, std::abs(v.imag()));
        }
        CHECK(max_im <= 1e-10 * max_re);
    }
}

TEST_CASE("normalize") {
    auto [v, tr] = normalize(vacuum());
    CHECK(tr == doctest::Approx(1.0).epsilon(1e-12));

    auto quarter = vacuum().scaled(LogComplex::from_real(0.25));
    auto [w, tr2] = normalize(quarter);
    CHECK(tr2 == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::abs(evaluate(w, pt(0, 0)).real() - 1.0 / kPi) < 1e-13);

    auto tiny = vacuum().scaled(LogComplex{-1000.0, 0.0});
    CHECK_THROWS_AS(normalize(tiny), UnderflowError);
    try {
        normalize(tiny);
    } catch (const UnderflowError& e) {
        CHECK(e.log_trace == doctest::Approx(-1000.0).epsilon(1e-9));
    }
}

TEST_CASE("restrict_coords slices") {
    const WignerObject cv = tensor(cat(CatSpec(1.0, Parity::Even)), vacuum());
    const WignerObject sl = restrict_coords(cv, {2, 3}, {0.5, -0.3});
    CHECK(sl.modes() == 1);
    const double direct = evaluate(cv, pt4(0.2, 0.1, 0.5, -0.3)).real();
    CHECK(std::abs(evaluate(sl, pt(0.2, 0.1)).real() - direct) < 1e-13);
}
