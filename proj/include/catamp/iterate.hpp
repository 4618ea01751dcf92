#pragma once

#include "catamp/wavefunction.hpp"

namespace catamp {

inline constexpr int kMaxIterations = 12;

/// Exponent convention for the closed-form k-th iterate phi0^E(2^{-k/2} x):
/// Pow2 (E = 2^k) matches the recursion exactly; Linear2k (E = 2k) is the
/// alternative convention some figure data follows.
enum class IterExponent { Pow2, Linear2k };

struct IterStage {
    int k = 0;
    double log_stage_norm = 0.0;  // log N^(k): pre-normalization L2 norm
    PolyGaussWavefunction phi;
};

/// One amplification step: phi -> normalize(phi^2(x/sqrt2)); the log of the
/// discarded norm is returned alongside (stage heralding density = N^2).
IterStage iterate_step(const PolyGaussWavefunction& phi, int k = 0);

PolyGaussWavefunction iterate_closed_form(const PolyGaussWavefunction& phi0,
                                          int k,
                                          IterExponent e = IterExponent::Pow2);

struct SizeResult {
    double beta_star = 0.0;
    double fidelity = 0.0;
};

/// argmax over beta of |<kappa_+(beta)|phi>|^2, expanding the bracket until
/// the optimum is interior.
SizeResult effective_size(const PolyGaussWavefunction& phi,
                          Parity parity = Parity::Even);

struct ScalingRow {
    int k = 0;
    double p_stage = 0.0;       // per-step heralding probability (or density)
    double log_p_stage = 0.0;
    double log_p_compound = 0.0;  // log prod_{j<=k} p_j^{2^{k-j}}
};

/// Per-stage and compound heralding success across k iterations. With
/// window_snu <= 0 the values are probability densities at x = 0 (absolute
/// quadrature units); otherwise windowed probabilities via quadrature of
/// the herald marginal.
std::vector<ScalingRow> success_scaling(const PolyGaussWavefunction& phi0,
                                        int k, double window_snu = 0.0);

}  // namespace catamp
