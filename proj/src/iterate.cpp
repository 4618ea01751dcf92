#include "catamp/iterate.hpp"

#include "catamp/numerics.hpp"

#include <cmath>
#include <numbers>

namespace catamp {

namespace {

void check_k(int k) {
    if (k < 0 || k > kMaxIterations)
        throw DimensionError("iteration count must be in [0, 12]");
}

}  // namespace

IterStage iterate_step(const PolyGaussWavefunction& phi, int k) {
    PolyGaussWavefunction next =
        wf_scale_arg(wf_multiply(phi, phi), std::numbers::sqrt2);
    auto [norm, log_n] = wf_normalize(next);
    return {k + 1, log_n, std::move(norm)};
}

PolyGaussWavefunction iterate_closed_form(const PolyGaussWavefunction& phi0,
                                          int k, IterExponent e) {
    check_k(k);
    if (k == 0) return wf_normalize(phi0).first;
    PolyGaussWavefunction p = phi0;
    if (e == IterExponent::Pow2) {
        for (int j = 0; j < k; ++j) p = wf_multiply(p, p);
    } else {
        // phi0^(2k) by binary exponentiation.
        int exp = 2 * k;
        PolyGaussWavefunction base = phi0;
        PolyGaussWavefunction acc;
        bool have = false;
        while (exp > 0) {
            if (exp & 1) {
                acc = have ? wf_multiply(acc, base) : base;
                have = true;
            }
            exp >>= 1;
            if (exp > 0) base = wf_multiply(base, base);
        }
        p = std::move(acc);
    }
    p = wf_scale_arg(p, std::pow(2.0, 0.5 * k));
    return wf_normalize(p).first;
}

SizeResult effective_size(const PolyGaussWavefunction& phi, Parity parity) {
    const auto f = [&](double beta) {
        return wf_fidelity_cat(CatSpec(beta, parity), phi);
    };
    double lo = 0.05, hi = 6.0;
    MaxResult r{lo, 0.0};
    for (int round = 0; round < 8; ++round) {
        r = maximize_scalar(f, lo, hi, 1e-4, 96);
        if (r.x < hi - 0.02 * (hi - lo) || hi >= 200.0) break;
        hi *= 2.0;
    }
    return {r.x, r.f};
}

namespace {

// Herald marginal after 50:50 mixing of two copies of phi: probability
// density of measuring x2 (absolute units) on the tapped output.
double herald_marginal(const PolyGaussWavefunction& phi, double x2) {
    const double deg = phi.degree();
    const double half_width =
        std::sqrt((2.0 * deg + 60.0) / phi.inv_var);
    const double lim = std::numbers::sqrt2 * half_width + std::abs(x2);
    const auto f = [&](double x1) {
        const double a = wf_evaluate(phi, (x1 + x2) * std::numbers::sqrt2 / 2.0);
        const double b = wf_evaluate(phi, (x1 - x2) * std::numbers::sqrt2 / 2.0);
        const double v = a * b;
        return v * v;
    };
    return integrate_1d(f, -lim, lim, 1e-11);
}

}  // namespace

std::vector<ScalingRow> success_scaling(const PolyGaussWavefunction& phi0,
                                        int k, double window_snu) {
    check_k(k);
    std::vector<ScalingRow> rows;
    PolyGaussWavefunction phi = wf_normalize(phi0).first;
    double log_compound = 0.0;
    for (int j = 1; j <= k; ++j) {
        IterStage st = iterate_step(phi, j - 1);
        ScalingRow row;
        row.k = j;
        const double log_density = 2.0 * st.log_stage_norm;
        if (window_snu > 0.0) {
            const double w = window_snu * kSnuToAbs;
            const double p = integrate_1d(
                [&](double x2) { return herald_marginal(phi, x2); }, -0.5 * w,
                0.5 * w, 1e-11);
            // Quadrature can lose all digits once the window probability
            // underflows; fall back to density x width, which is exact in
            // the narrow-window limit.
            row.log_p_stage =
                p > 0.0 ? std::log(p) : log_density + std::log(w);
        } else {
            row.log_p_stage = log_density;
        }
        row.p_stage = std::exp(row.log_p_stage);
        log_compound = 2.0 * log_compound + row.log_p_stage;
        row.log_p_compound = log_compound;
        rows.push_back(row);
        phi = std::move(st.phi);
    }
    return rows;
}

}  // namespace catamp
