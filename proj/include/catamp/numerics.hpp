#pragma once

#include "catamp/log_complex.hpp"

#include <complex>
#include <functional>
#include <stdexcept>

namespace catamp {

/// Error function of a complex argument, accurate to better than 1e-12
/// relative over |Re z|, |Im z| <= 30 (arguments beyond are clamped to
/// that box; there the value saturates or exceeds the double range).
std::complex<double> erf_complex(std::complex<double> z);

/// erfc(z) = 1 - erf(z) for Re z >= 0, in log scale so far-tail values
/// (magnitude ~ e^{-Re(z)^2}) keep full relative precision well past the
/// double underflow threshold.
LogComplex erfc_complex_log(std::complex<double> z);

struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive Simpson quadrature, absolute tolerance `tol`, depth limit 60.
/// Throws IntegrationError if the recursion hits the depth limit.
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    double tol);

struct MaxResult {
    double x;
    double f;
};

/// Coarse grid (>= 64 points) followed by golden-section refinement around
/// the best grid cell. Flat plateaus resolve to the smallest maximizer.
MaxResult maximize_scalar(const std::function<double(double)>& f, double lo,
                          double hi, double tol, int grid_points = 64);

}  // namespace catamp
