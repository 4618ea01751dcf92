#include "catamp/numerics.hpp"

#include "catamp/log_complex.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace catamp {

namespace {

using Cplx = std::complex<double>;

constexpr double kSqrtPi = 1.7724538509055160273;

// Maclaurin series of erf, adequate for |z| <= 3.
Cplx erf_series(Cplx z) {
    const Cplx z2 = z * z;
    Cplx term = z;
    Cplx sum = z;
    for (int n = 1; n < 120; ++n) {
        term *= -z2 / static_cast<double>(n);
        const Cplx c = term / static_cast<double>(2 * n + 1);
        sum += c;
        if (std::abs(c) < 1e-18 * std::abs(sum)) break;
    }
    return (2.0 / kSqrtPi) * sum;
}

// Dawson integral for real y >= 0 (Rybicki's sampled-Gaussian sum).
double dawson_real(double y) {
    const double h = 0.2;
    int n0 = static_cast<int>(std::lround(y / h));
    if (n0 % 2 == 0) n0 += 1;
    double sum = 0.0;
    for (int n = n0 - 60; n <= n0 + 61; n += 2) {
        if (n == 0) continue;
        const double d = y - n * h;
        sum += std::exp(-d * d) / n;
    }
    return sum / kSqrtPi;
}

// Taylor step off the imaginary axis: z = x + iy with 0 <= x < 0.1.
// Uses erf(iy) = i (2/sqrt(pi)) e^{y^2} daw(y) and the derivative
// recurrence f_{m+1} = -2 z0 f_m - 2 m f_{m-1} for f_m = (e^{-z^2})^{(m)}.
Cplx erf_near_imag_axis(double x, double y) {
    Cplx sum(0.0, (2.0 / kSqrtPi) * std::exp(y * y) * dawson_real(y));
    const Cplx z0(0.0, y);
    Cplx fm1 = 0.0;
    Cplx f = std::exp(y * y);
    double xpow = 1.0;
    double fact = 1.0;
    for (int m = 0; m < 90; ++m) {
        xpow *= x;
        fact *= m + 1;
        const Cplx c = (2.0 / kSqrtPi) * f * (xpow / fact);
        sum += c;
        const Cplx fnew = -2.0 * z0 * f - 2.0 * static_cast<double>(m) * fm1;
        fm1 = f;
        f = fnew;
        if (m > 3 && std::abs(c) < 1e-19 * std::abs(sum)) break;
    }
    return sum;
}

// Faddeeva w(u) for Im u >= 0, 3 <= |u| <= 12: midpoint trapezoid sum of
// the defining integral plus the Poisson pole correction. Accurate to
// ~1e-14 relative provided Im u is not within ~0.1 of the real axis
// (callers guarantee that via the near-axis Taylor branch).
Cplx faddeeva_trapezoid(Cplx u) {
    const double h = 0.25;
    const int K = static_cast<int>(std::ceil((12.0 + std::abs(u)) / h));
    Cplx sum = 0.0;
    for (int k = -K; k < K; ++k) {
        const double t = (k + 0.5) * h;
        sum += std::exp(-t * t) / (u - t);
    }
    sum *= Cplx(0.0, h / M_PI);
    const Cplx p = std::exp(Cplx(0.0, 2.0 * M_PI / h) * u);
    return sum + 2.0 * std::exp(-u * u) * p / (1.0 + p);
}

// Asymptotic series, |u| >= 12.
Cplx faddeeva_asymptotic(Cplx u) {
    const Cplx iu2 = 1.0 / (u * u);
    Cplx sum = 1.0;
    Cplx term = 1.0;
    for (int n = 1; n <= 12; ++n) {
        term *= (2.0 * n - 1.0) * 0.5 * iu2;
        sum += term;
    }
    return Cplx(0.0, 1.0) * sum / (kSqrtPi * u);
}

// erf on the quadrant x >= 0, y >= 0.
Cplx erf_quadrant(double x, double y) {
    const Cplx z(x, y);
    const double r = std::abs(z);
    if (r <= 3.0) return erf_series(z);
    if (x < 0.1 && r <= 12.0) return erf_near_imag_axis(x, y);
    // w(iz) = conj(w(y + ix)) by w(-conj a) = conj(w(a)); y + ix is in the
    // upper half-plane with Im >= 0.1 here.
    const Cplx uu(y, x);
    const Cplx w = std::conj(r > 12.0 ? faddeeva_asymptotic(uu)
                                      : faddeeva_trapezoid(uu));
    const Cplx mz2 = -z * z;
    if (mz2.real() < -700.0) return 1.0;  // e^{-z^2} underflows: saturated
    // Assemble e^{-z^2} w(iz) in log scale so the tail toward the double
    // range edge keeps its phase.
    const LogComplex tail = LogComplex::exp_of(mz2) * LogComplex::from_complex(w);
    return 1.0 - tail.to_complex();
}

}  // namespace

LogComplex erfc_complex_log(Cplx z) {
    double x = z.real();
    double y = z.imag();
    if (x < 0.0)
        throw IntegrationError("erfc_complex_log: requires Re z >= 0");
    const bool conj = y < 0.0;
    if (conj) y = -y;
    x = std::min(x, 1e8);
    y = std::min(y, 30.0);
    LogComplex r;
    const double rad = std::hypot(x, y);
    if (rad <= 3.0 || (x < 0.1 && rad <= 12.0)) {
        // erfc is O(1) here; the linear-scale subtraction loses at most a
        // few digits at the rad = 3 edge.
        r = LogComplex::from_complex(1.0 - erf_complex(Cplx(x, y)));
    } else {
        const Cplx u(y, x);  // w(iz) = conj(w(y + ix))
        const Cplx w = std::conj(rad > 12.0 ? faddeeva_asymptotic(u)
                                            : faddeeva_trapezoid(u));
        const Cplx zz(x, y);
        r = LogComplex::exp_of(-zz * zz) * LogComplex::from_complex(w);
    }
    if (conj) r.phase = -r.phase;
    return r;
}

Cplx erf_complex(Cplx z) {
    double x = z.real();
    double y = z.imag();
    const bool neg = x < 0.0 || (x == 0.0 && y < 0.0);
    if (neg) {
        x = -x;
        y = -y;
    }
    const bool conj = y < 0.0;
    if (conj) y = -y;
    x = std::min(x, 30.0);
    y = std::min(y, 30.0);
    Cplx r = erf_quadrant(x, y);
    if (conj) r = std::conj(r);
    if (neg) r = -r;
    return r;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth) {
    if (depth > 60)
        throw IntegrationError("integrate_1d: depth limit reached (pathological integrand?)");
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    double tol) {
    if (!(tol > 0)) throw IntegrationError("integrate_1d: tol must be > 0");
    if (a == b) return 0.0;
    // Start from a fixed subdivision so narrow or symmetric features cannot
    // fool the first convergence test on the full interval.
    constexpr int kPanels = 16;
    const double h = (b - a) / kPanels;
    double total = 0.0;
    double fl = f(a);
    for (int i = 0; i < kPanels; ++i) {
        const double l = a + i * h;
        const double r = (i == kPanels - 1) ? b : a + (i + 1) * h;
        const double fr = f(r);
        const double fm = f(0.5 * (l + r));
        const double whole = simpson(f, l, r, fl, fm, fr);
        total += adapt(f, l, r, fl, fm, fr, whole, tol / kPanels, 0);
        fl = fr;
    }
    return total;
}

MaxResult maximize_scalar(const std::function<double(double)>& f, double lo,
                          double hi, double tol, int grid_points) {
    const int n = std::max(grid_points, 64);
    std::vector<double> xs(n), fs(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = lo + (hi - lo) * i / (n - 1);
        fs[i] = f(xs[i]);
    }
    int best = 0;
    for (int i = 1; i < n; ++i)
        if (fs[i] > fs[best]) best = i;  // strict: ties keep the smallest x

    double a = xs[std::max(best - 1, 0)];
    double b = xs[std::min(best + 1, n - 1)];
    MaxResult res{xs[best], fs[best]};

    // Golden-section refinement on the bracketing cell.
    const double gr = 0.6180339887498949;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    const double fxm = f(xm);
    if (fxm > res.f) res = {xm, fxm};
    if (f1 > res.f) res = {x1, f1};
    if (f2 > res.f) res = {x2, f2};
    return res;
}

}  // namespace catamp
