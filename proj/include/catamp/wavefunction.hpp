#pragma once

#include "catamp/states.hpp"

#include <vector>

namespace catamp {

/// Signed log-scale real: sign * exp(log_abs).
struct SignedLog {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;

    double value() const { return sign * std::exp(log_abs); }
    static SignedLog from_value(double v);
};

/// Position wavefunction exp(log_norm) * (sum_i c_i x^i) * e^{-inv_var x^2/2}
/// with coefficients held in signed log scale: c_i = sign[i] e^{log_c[i]}.
/// Degrees double per amplification step, so coefficient magnitudes leave
/// the double range quickly; everything stays in log scale.
struct PolyGaussWavefunction {
    std::vector<double> log_c;
    std::vector<int8_t> sign;
    double inv_var = 1.0;
    double log_norm = 0.0;

    int degree() const { return static_cast<int>(log_c.size()) - 1; }
    /// +1 even, -1 odd, 0 mixed (from the populated coefficient indices).
    int parity() const;
};

double wf_evaluate(const PolyGaussWavefunction& phi, double x);

/// log of the L2 norm sqrt(int |phi|^2 dx).
double wf_log_l2(const PolyGaussWavefunction& phi);

/// Unit L2 norm; second element is the log of the pre-normalization norm.
std::pair<PolyGaussWavefunction, double> wf_normalize(const PolyGaussWavefunction& phi);

/// <phi|psi> (both real).
double wf_inner(const PolyGaussWavefunction& phi, const PolyGaussWavefunction& psi);

/// <kappa(c)|phi> in signed log scale; phi need not be normalized
/// (log_norm is included).
SignedLog wf_inner_cat(const CatSpec& c, const PolyGaussWavefunction& phi);

/// |<kappa(c)|phi>|^2 for normalized phi.
double wf_fidelity_cat(const CatSpec& c, const PolyGaussWavefunction& phi);

/// Squeezed single photon: sqrt(2)/(pi^{1/4} s^{3/2}) x e^{-x^2/(2 s^2)}.
PolyGaussWavefunction wf_squeezed_fock1(double s);

/// Cat wavefunction as Gaussian * {sinh, cosh}(sqrt2 gamma x), the
/// hyperbolic factor Taylor-expanded far enough that the truncation is
/// below 1e-20 relative over the support probed by overlaps.
PolyGaussWavefunction wf_cat(const CatSpec& c);

/// Vacuum wavefunction pi^{-1/4} e^{-x^2/2}.
PolyGaussWavefunction wf_vacuum();

/// Pointwise product (exponents and log_norms add, polynomials convolve).
PolyGaussWavefunction wf_multiply(const PolyGaussWavefunction& a,
                                  const PolyGaussWavefunction& b);

/// phi(x / lambda), lambda > 0.
PolyGaussWavefunction wf_scale_arg(const PolyGaussWavefunction& phi,
                                   double lambda);

}  // namespace catamp
