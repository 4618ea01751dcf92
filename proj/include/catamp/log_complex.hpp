#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <span>

namespace catamp {

/// Complex number stored as (log magnitude, phase). Magnitudes far beyond
/// the double range (e^±600 and more) stay exact under multiplication;
/// conversion to a linear-scale complex happens only at final ratios.
struct LogComplex {
    double log_mag = -std::numeric_limits<double>::infinity();
    double phase = 0.0;

    static LogComplex zero() { return {}; }
    static LogComplex one() { return {0.0, 0.0}; }

    static LogComplex from_real(double x) {
        if (x == 0.0) return zero();
        return {std::log(std::abs(x)), x > 0 ? 0.0 : M_PI};
    }

    static LogComplex from_complex(std::complex<double> z) {
        if (z == 0.0) return zero();
        return {std::log(std::abs(z)), std::arg(z)};
    }

    /// exp(e) for complex exponent e: magnitude e^{Re e}, phase Im e.
    static LogComplex exp_of(std::complex<double> e) {
        return {e.real(), wrap(e.imag())};
    }

    bool is_zero() const { return std::isinf(log_mag) && log_mag < 0; }

    std::complex<double> to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        return std::polar(std::exp(log_mag), phase);
    }

    /// Linear value after dividing out e^{shift}; for reporting huge/tiny scalars.
    std::complex<double> to_complex_shifted(double shift) const {
        if (is_zero()) return {0.0, 0.0};
        return std::polar(std::exp(log_mag - shift), phase);
    }

    LogComplex operator*(const LogComplex& o) const {
        if (is_zero() || o.is_zero()) return zero();
        return {log_mag + o.log_mag, wrap(phase + o.phase)};
    }
    LogComplex operator/(const LogComplex& o) const {
        return {log_mag - o.log_mag, wrap(phase - o.phase)};
    }
    LogComplex& operator*=(const LogComplex& o) { return *this = *this * o; }

    LogComplex pow(double e) const {
        if (is_zero()) return zero();
        return {log_mag * e, wrap(phase * e)};
    }

    static double wrap(double ph) {
        if (ph > M_PI || ph <= -M_PI) ph = std::remainder(ph, 2.0 * M_PI);
        return ph;
    }
};

/// Stable sum: factor out the largest magnitude, accumulate residuals linearly.
inline LogComplex log_sum(std::span<const LogComplex> terms) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms) m = std::max(m, t.log_mag);
    if (std::isinf(m)) return LogComplex::zero();
    std::complex<double> acc = 0.0;
    for (const auto& t : terms) acc += t.to_complex_shifted(m);
    if (acc == 0.0) return LogComplex::zero();
    return {m + std::log(std::abs(acc)), std::arg(acc)};
}

}  // namespace catamp
