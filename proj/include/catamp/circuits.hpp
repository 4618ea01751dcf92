#pragma once

#include "catamp/states.hpp"

#include <optional>

namespace catamp {

/// Beam splitter of transmittance T acting on modes i, j (0-based):
/// x_i' = sqrt(T) x_i - sqrt(1-T) x_j, x_j' = sqrt(1-T) x_i + sqrt(T) x_j,
/// identically for p.
SymplecticMap beamsplitter(double T, int mode_i, int mode_j, int modes);

struct PssvResult {
    WignerObject state;   // normalized, 2 Gaussian terms
    double success = 0.0; // pre-normalization trace (click probability)
    double log_success = 0.0;
};

/// Photon-subtracted squeezed vacuum: squeezed x vacuum -> BS(T) -> APD
/// click on the tapped mode.
PssvResult generate_pssv(const SqueezingSpec& s, double T);

/// <target| rho |target> for a pure target, clamped to [0,1].
double fidelity_with_pure(const WignerObject& state, const WignerObject& target);

/// Two-mode state with one mode awaiting a boxcar (or exact-slice)
/// x-quadrature herald.
struct HeraldedState {
    WignerObject pre_measurement;
    int herald_mode = 1;
    MeasurementSpec window;
};

/// Mix in1 and in2 on a 50:50 beam splitter; herald mode 2 on an
/// x-quadrature window centered at x0 = 0 of width `window_snu` SNU
/// (window_snu <= 0 selects the exact Dirac slice).
HeraldedState amplify(const WignerObject& in1, const WignerObject& in2,
                      double window_snu);

/// Window probability of the herald (or, for exact slices, the probability
/// density at x0 in absolute quadrature units).
double heralded_success(const HeraldedState& h);
double heralded_log_success(const HeraldedState& h);

/// Fidelity of the heralded output with kappa(target); a ratio of two
/// closed-form scalars, clamped to [0,1].
double heralded_fidelity(const HeraldedState& h, const CatSpec& target);

/// Normalized output Wigner function at (x, p).
double heralded_wigner_at(const HeraldedState& h, double x, double p);

/// F = sech(beta^2) |cosh(sqrt2 a b) pm e^{-a^2}|^2
///     / (cosh(2 a^2) + e^{-2 a^2} pm 2 e^{-a^2});  the exact-homodyne
/// fidelity of the state amplified from two kappa_pm(alpha) with
/// kappa_+(beta) (pm = parity of the inputs).
double analytic_amplified_fidelity(double alpha, double beta, Parity input_parity);

/// Probability of mistaking an even cat of size beta for the vacuum given
/// an x ~ 0 window outcome: P(kappa+) / (P(kappa+) + P(0)).
double perr(double beta, double window_snu);

struct OptimizationResult {
    double argument = 0.0;
    double fidelity = 0.0;
    double success = 0.0;
    bool at_edge = false;
};

/// Maximize fidelity with kappa(parity, beta) over beta in [0.05, 6].
OptimizationResult optimize_target_size(const WignerObject& state, Parity parity);
OptimizationResult optimize_target_size(const HeraldedState& h, Parity parity);

enum class InputMode { IdealCat, Pssv };

/// For a target kappa_+(beta), find the input (odd-cat size alpha, or pure
/// squeezing xi in dB for PSSV inputs) maximizing the amplified fidelity.
OptimizationResult optimize_input_for_target(double beta, InputMode mode,
                                             double T, double window_snu);

}  // namespace catamp
