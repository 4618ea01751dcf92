#include "catamp/circuits.hpp"

#include "catamp/numerics.hpp"
#include "catamp/wavefunction.hpp"  // SignedLog

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

namespace catamp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;

double log_cosh(double u) {
    u = std::abs(u);
    return u + std::log1p(std::exp(-2.0 * u)) - std::log(2.0);
}

}  // namespace

SymplecticMap beamsplitter(double T, int mode_i, int mode_j, int modes) {
    if (!(T > 0.0 && T <= 1.0))
        throw DimensionError("beamsplitter: T must be in (0, 1]");
    if (mode_i == mode_j || mode_i < 0 || mode_j < 0 || mode_i >= modes ||
        mode_j >= modes)
        throw DimensionError("beamsplitter: bad mode indices");
    const double ct = std::sqrt(T);
    const double st = std::sqrt(1.0 - T);
    RMatrix m = RMatrix::Identity(2 * modes, 2 * modes);
    for (int q = 0; q < 2; ++q) {  // same action on x and p
        const int i = 2 * mode_i + q;
        const int j = 2 * mode_j + q;
        m(i, i) = ct;
        m(i, j) = -st;
        m(j, i) = st;
        m(j, j) = ct;
    }
    return SymplecticMap(m);
}

PssvResult generate_pssv(const SqueezingSpec& s, double T) {
    if (!(T > 0.0 && T < 1.0))
        throw DimensionError("generate_pssv: T must be in (0, 1)");
    WignerObject joint = apply_linear(tensor(squeezed_vacuum(s), vacuum()),
                                      beamsplitter(T, 0, 1, 2));
    WignerObject clicked =
        multiply(joint, tensor(WignerObject::constant_op(1), op_apd()));
    // Trace out the detector mode; the (2pi) is the trace pairing there.
    WignerObject reduced{integrate_terms(clicked.terms(), {2, 3}, 4), 1,
                         Kind::State};
    reduced = reduced.scaled(LogComplex::from_real(2.0 * kPi));
    const LogComplex tr = integrate_all_log(reduced);
    if (tr.is_zero())
        throw UnderflowError(-std::numeric_limits<double>::infinity());
    PssvResult r{reduced.scaled(LogComplex::one() / tr),
                 tr.to_complex().real(), tr.log_mag};
    return r;
}

double fidelity_with_pure(const WignerObject& state, const WignerObject& target) {
    if (std::abs(purity(target) - 1.0) > 1e-9)
        throw DimensionError("fidelity_with_pure: target is not pure");
    const double f = overlap(state, target);
    return std::clamp(f, 0.0, 1.0);
}

HeraldedState amplify(const WignerObject& in1, const WignerObject& in2,
                      double window_snu) {
    if (in1.modes() != 1 || in2.modes() != 1)
        throw DimensionError("amplify: inputs must be single-mode");
    WignerObject pre = apply_linear(tensor(in1, in2), beamsplitter(0.5, 0, 1, 2));
    MeasurementSpec win = window_snu > 0.0
                              ? op_homodyne_window(0.0, window_snu)
                              : op_homodyne_exact(0.0);
    return {std::move(pre), 1, win};
}

namespace {

// Boxcar (or Dirac-slice) reduction of 1-D Gaussian terms in the herald x
// coordinate. Window bounds in absolute quadrature units.
LogComplex reduce_1d(const std::vector<GaussianTerm>& terms,
                     const MeasurementSpec& win) {
    const double x0 = win.center_snu * kSnuToAbs;
    std::vector<LogComplex> vals;
    vals.reserve(2 * terms.size());
    for (const auto& t : terms) {
        const Cplx a = t.quad(0, 0);
        const Cplx b = t.lin(0);
        if (win.exact) {
            vals.push_back(t.amplitude *
                           LogComplex::exp_of(a * x0 * x0 + b * x0));
            continue;
        }
        const double half = 0.5 * win.width_snu * kSnuToAbs;
        const double lo = x0 - half, hi = x0 + half;
        // int_lo^hi e^{a x^2 + b x} dx
        //   = e^{-b^2/4a} (sqrt(pi)/(2 sqrt(-a))) [erf(u_hi) - erf(u_lo)],
        //   u = sqrt(-a) (x + b/(2a)).
        const Cplx sq = std::sqrt(-a);  // principal branch, Re > 0
        const Cplx shift = b / (2.0 * a);
        const Cplx u_lo = sq * (lo + shift);
        const Cplx u_hi = sq * (hi + shift);
        const LogComplex pref = t.amplitude *
                                LogComplex::exp_of(-b * b / (4.0 * a)) *
                                LogComplex::from_complex(kSqrtPi / (2.0 * sq));
        LogComplex diff;
        if (u_lo.real() >= 0.0 && u_hi.real() >= 0.0) {
            // Right tail: erf(hi) - erf(lo) = erfc(lo) - erfc(hi).
            LogComplex e1 = erfc_complex_log(u_lo);
            LogComplex e2 = erfc_complex_log(u_hi);
            e2.phase = LogComplex::wrap(e2.phase + kPi);
            diff = log_sum(std::array{e1, e2});
        } else if (u_lo.real() <= 0.0 && u_hi.real() <= 0.0) {
            // Left tail: erf(hi) - erf(lo) = erfc(-hi) - erfc(-lo).
            LogComplex e1 = erfc_complex_log(-u_hi);
            LogComplex e2 = erfc_complex_log(-u_lo);
            e2.phase = LogComplex::wrap(e2.phase + kPi);
            diff = log_sum(std::array{e1, e2});
        } else {
            diff = LogComplex::from_complex(erf_complex(u_hi) -
                                            erf_complex(u_lo));
        }
        vals.push_back(pref * diff);
    }
    return log_sum(vals);
}

// Integrate every coordinate except the herald x in closed form, then
// apply the window. Optionally multiply first (callers do that).
LogComplex reduce_to_scalar(const WignerObject& w, int herald_mode,
                            const MeasurementSpec& win) {
    const int dim = 2 * w.modes();
    const int hx = 2 * herald_mode;
    std::vector<int> coords;
    for (int i = 0; i < dim; ++i)
        if (i != hx) coords.push_back(i);
    return reduce_1d(integrate_terms(w.terms(), coords, dim), win);
}

LogComplex herald_scalar(const HeraldedState& h) {
    return reduce_to_scalar(h.pre_measurement, h.herald_mode, h.window);
}

double check_real(const LogComplex& v, const char* where) {
    const Cplx c = v.to_complex();
    if (std::abs(c.imag()) > 1e-9 * std::max(std::abs(c.real()), 1e-300))
        throw NonIntegrableError(std::string(where) +
                                 ": non-real scalar reduction");
    return c.real();
}

}  // namespace

double heralded_success(const HeraldedState& h) {
    return check_real(herald_scalar(h), "heralded_success");
}

double heralded_log_success(const HeraldedState& h) {
    return herald_scalar(h).log_mag;
}

double heralded_fidelity(const HeraldedState& h, const CatSpec& target) {
    const LogComplex den = herald_scalar(h);
    if (den.is_zero() || den.log_mag < -644.6) throw UnderflowError(den.log_mag);
    const int out_mode = h.herald_mode == 0 ? 1 : 0;
    WignerObject proj =
        out_mode == 0
            ? tensor(op_cat_projector(target), WignerObject::constant_op(1))
            : tensor(WignerObject::constant_op(1), op_cat_projector(target));
    const WignerObject num_obj = multiply(h.pre_measurement, proj);
    LogComplex num = reduce_to_scalar(num_obj, h.herald_mode, h.window);
    num *= LogComplex::from_real(2.0 * kPi);  // trace pairing on the output mode
    const double f = check_real(num / den, "heralded_fidelity");
    return std::clamp(f, 0.0, 1.0);
}

double heralded_wigner_at(const HeraldedState& h, double x, double p) {
    const LogComplex den = herald_scalar(h);
    if (den.is_zero() || den.log_mag < -644.6) throw UnderflowError(den.log_mag);
    const int out_mode = h.herald_mode == 0 ? 1 : 0;
    const WignerObject at_point = restrict_coords(
        h.pre_measurement, {2 * out_mode, 2 * out_mode + 1}, {x, p});
    // What remains is the herald mode alone: integrate its p, window its x.
    const LogComplex num =
        reduce_1d(integrate_terms(at_point.terms(), {1}, 2), h.window);
    return check_real(num / den, "heralded_wigner_at");
}

double analytic_amplified_fidelity(double alpha, double beta,
                                   Parity input_parity) {
    const double s = parity_sign(input_parity);
    const double a2 = alpha * alpha;
    // Numerator |cosh(sqrt2 a b) + s e^{-a^2}|^2 and denominator
    // cosh(2 a^2) + e^{-2 a^2} + 2 s e^{-a^2}, assembled in log scale.
    const SignedLog num = [&] {
        std::vector<SignedLog> acc{
            {log_cosh(std::numbers::sqrt2 * alpha * beta), 1},
            {-a2, s > 0 ? 1 : -1}};
        double m = std::max(acc[0].log_abs, acc[1].log_abs);
        double v = acc[0].sign * std::exp(acc[0].log_abs - m) +
                   acc[1].sign * std::exp(acc[1].log_abs - m);
        return SignedLog{m + std::log(std::abs(v)), v > 0 ? 1 : -1};
    }();
    const double den_m = log_cosh(2.0 * a2);
    const double den =
        den_m + std::log(1.0 + std::exp(-2.0 * a2 - den_m) +
                         2.0 * s * std::exp(-a2 - den_m));
    const double logf = -log_cosh(beta * beta) + 2.0 * num.log_abs - den;
    return std::clamp(std::exp(logf), 0.0, 1.0);
}

double perr(double beta, double window_snu) {
    if (!(window_snu > 0.0))
        throw DimensionError("perr: window must be > 0");
    const MeasurementSpec win = op_homodyne_window(0.0, window_snu);
    const auto wprob = [&](const WignerObject& st) {
        return reduce_1d(integrate_terms(st.terms(), {1}, 2), win);
    };
    const LogComplex p_cat = wprob(cat(CatSpec(beta, Parity::Even)));
    const LogComplex p_vac = wprob(vacuum());
    // P(cat) / (P(cat) + P(vac)) = 1 / (1 + e^{log vac - log cat}).
    return 1.0 / (1.0 + std::exp(p_vac.log_mag - p_cat.log_mag));
}

namespace {

OptimizationResult run_opt(const std::function<double(double)>& f, double lo,
                           double hi, double tol) {
    const MaxResult r = maximize_scalar(f, lo, hi, tol, 96);
    OptimizationResult out;
    out.argument = r.x;
    out.fidelity = r.f;
    out.at_edge = r.x <= lo + 2.0 * tol || r.x >= hi - 2.0 * tol;
    return out;
}

}  // namespace

OptimizationResult optimize_target_size(const WignerObject& state, Parity parity) {
    OptimizationResult r = run_opt(
        [&](double beta) {
            return std::clamp(
                overlap(state, op_cat_projector(CatSpec(beta, parity))), 0.0,
                1.0);
        },
        0.05, 6.0, 1e-4);
    r.success = 1.0;
    return r;
}

OptimizationResult optimize_target_size(const HeraldedState& h, Parity parity) {
    OptimizationResult r = run_opt(
        [&](double beta) {
            return heralded_fidelity(h, CatSpec(beta, parity));
        },
        0.05, 6.0, 1e-4);
    r.success = heralded_success(h);
    return r;
}

OptimizationResult optimize_input_for_target(double beta, InputMode mode,
                                             double T, double window_snu) {
    const CatSpec target(beta, Parity::Even);
    if (mode == InputMode::IdealCat) {
        const auto f = [&](double alpha) {
            const WignerObject in = cat(CatSpec(alpha, Parity::Odd));
            return heralded_fidelity(amplify(in, in, window_snu), target);
        };
        OptimizationResult r = run_opt(f, 0.05, 4.0, 1e-4);
        const WignerObject in = cat(CatSpec(r.argument, Parity::Odd));
        r.success = heralded_success(amplify(in, in, window_snu));
        return r;
    }
    const auto f = [&](double xi) {
        const WignerObject in = generate_pssv(SqueezingSpec::pure(xi), T).state;
        return heralded_fidelity(amplify(in, in, window_snu), target);
    };
    OptimizationResult r = run_opt(f, 0.2, 15.0, 1e-4);
    const WignerObject in = generate_pssv(SqueezingSpec::pure(r.argument), T).state;
    r.success = heralded_success(amplify(in, in, window_snu));
    return r;
}

}  // namespace catamp
