#include "catamp/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace catamp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLogPi = 1.1447298858494001741;

SignedLog accumulate(const std::vector<SignedLog>& terms) {
    double m = kNegInf;
    for (const auto& t : terms)
        if (t.sign != 0) m = std::max(m, t.log_abs);
    if (std::isinf(m)) return {};
    double acc = 0.0;
    for (const auto& t : terms)
        if (t.sign != 0) acc += t.sign * std::exp(t.log_abs - m);
    if (acc == 0.0) return {};
    return {m + std::log(std::abs(acc)), acc > 0 ? 1 : -1};
}

// log Gamma(j + 1/2) (the even Gaussian moment numerator for m = 2j).
double lgamma_half(int j) { return std::lgamma(j + 0.5); }

// log of int x^m e^{-c x^2} dx for even m; -inf for odd m.
double log_moment(int m, double c) {
    if (m % 2 != 0) return kNegInf;
    return lgamma_half(m / 2) - 0.5 * (m + 1) * std::log(c);
}

// Signed-log polynomial convolution.
void convolve(const PolyGaussWavefunction& a, const PolyGaussWavefunction& b,
              std::vector<double>& log_out, std::vector<int8_t>& sign_out) {
    const int na = static_cast<int>(a.log_c.size());
    const int nb = static_cast<int>(b.log_c.size());
    log_out.assign(na + nb - 1, kNegInf);
    sign_out.assign(na + nb - 1, 0);
    std::vector<SignedLog> acc;
    for (int k = 0; k < na + nb - 1; ++k) {
        acc.clear();
        const int lo = std::max(0, k - nb + 1);
        const int hi = std::min(k, na - 1);
        for (int i = lo; i <= hi; ++i) {
            if (a.sign[i] == 0 || b.sign[k - i] == 0) continue;
            acc.push_back({a.log_c[i] + b.log_c[k - i],
                           a.sign[i] * b.sign[k - i]});
        }
        const SignedLog s = accumulate(acc);
        log_out[k] = s.log_abs;
        sign_out[k] = static_cast<int8_t>(s.sign);
    }
}

}  // namespace

SignedLog SignedLog::from_value(double v) {
    if (v == 0.0) return {};
    return {std::log(std::abs(v)), v > 0 ? 1 : -1};
}

int PolyGaussWavefunction::parity() const {
    bool has_even = false, has_odd = false;
    for (size_t i = 0; i < log_c.size(); ++i) {
        if (sign[i] == 0) continue;
        (i % 2 == 0 ? has_even : has_odd) = true;
    }
    if (has_even && has_odd) return 0;
    if (has_odd) return -1;
    return 1;  // includes the zero polynomial
}

double wf_evaluate(const PolyGaussWavefunction& phi, double x) {
    std::vector<SignedLog> acc;
    acc.reserve(phi.log_c.size());
    const double lax = x == 0.0 ? kNegInf : std::log(std::abs(x));
    for (size_t i = 0; i < phi.log_c.size(); ++i) {
        if (phi.sign[i] == 0) continue;
        if (x == 0.0) {
            if (i == 0) acc.push_back({phi.log_c[0], phi.sign[0]});
            continue;
        }
        const int s = (x < 0.0 && i % 2 == 1) ? -phi.sign[i] : phi.sign[i];
        acc.push_back({phi.log_c[i] + static_cast<double>(i) * lax, s});
    }
    SignedLog s = accumulate(acc);
    if (s.sign == 0) return 0.0;
    s.log_abs += phi.log_norm - 0.5 * phi.inv_var * x * x;
    return s.value();
}

double wf_log_l2(const PolyGaussWavefunction& phi) {
    std::vector<double> lc;
    std::vector<int8_t> sg;
    convolve(phi, phi, lc, sg);
    std::vector<SignedLog> acc;
    for (size_t m = 0; m < lc.size(); m += 2)
        if (sg[m] != 0)
            acc.push_back({lc[m] + log_moment(static_cast<int>(m), phi.inv_var),
                           sg[m]});
    const SignedLog s = accumulate(acc);
    if (s.sign <= 0)
        throw DimensionError("wf_log_l2: non-positive squared norm");
    return 0.5 * s.log_abs + phi.log_norm;
}

std::pair<PolyGaussWavefunction, double> wf_normalize(const PolyGaussWavefunction& phi) {
    const double ln = wf_log_l2(phi);
    PolyGaussWavefunction out = phi;
    out.log_norm -= ln;
    // Rebase coefficients so the largest is 1.
    double top = kNegInf;
    for (size_t i = 0; i < out.log_c.size(); ++i)
        if (out.sign[i] != 0) top = std::max(top, out.log_c[i]);
    if (std::isfinite(top)) {
        for (auto& l : out.log_c) l -= top;
        out.log_norm += top;
    }
    return {out, ln};
}

double wf_inner(const PolyGaussWavefunction& phi, const PolyGaussWavefunction& psi) {
    PolyGaussWavefunction prod = wf_multiply(phi, psi);
    std::vector<SignedLog> acc;
    for (size_t m = 0; m < prod.log_c.size(); m += 2)
        if (prod.sign[m] != 0)
            acc.push_back({prod.log_c[m] +
                               log_moment(static_cast<int>(m), prod.inv_var),
                           prod.sign[m]});
    SignedLog s = accumulate(acc);
    s.log_abs += prod.log_norm;
    return s.sign == 0 ? 0.0 : s.value();
}

namespace {

// I(d) = sum_n c_n int x^n e^{-c x^2 + d x} dx / e^{d^2/(4c)}
//      = sum_n c_n sum_{m even} C(n,m) mu^{n-m} M_m(c),  mu = d/(2c).
SignedLog lobe_sum(const PolyGaussWavefunction& phi, double mu, double c) {
    const int deg = phi.degree();
    std::vector<double> lgam(deg + 2);
    for (int j = 0; j <= deg + 1; ++j) lgam[j] = std::lgamma(j + 1.0);
    const double lmu = mu == 0.0 ? kNegInf : std::log(std::abs(mu));
    const int smu = mu > 0.0 ? 1 : (mu < 0.0 ? -1 : 0);
    std::vector<SignedLog> acc;
    for (int n = 0; n <= deg; ++n) {
        if (phi.sign[n] == 0) continue;
        for (int m = 0; m <= n; m += 2) {
            const int pw = n - m;
            if (pw > 0 && smu == 0) continue;
            const double lbin = lgam[n] - lgam[m] - lgam[n - m];
            const double lterm = phi.log_c[n] + lbin +
                                 (pw == 0 ? 0.0 : pw * lmu) + log_moment(m, c);
            int s = phi.sign[n];
            if (smu < 0 && pw % 2 == 1) s = -s;
            acc.push_back({lterm, s});
        }
    }
    return accumulate(acc);
}

}  // namespace

SignedLog wf_inner_cat(const CatSpec& c, const PolyGaussWavefunction& phi) {
    const double d0 = std::numbers::sqrt2 * c.gamma;  // lobe center
    const double cc = 0.5 * (phi.inv_var + 1.0);
    const double mu = d0 / (2.0 * cc);
    const double sgn = parity_sign(c.parity);

    SignedLog ip = lobe_sum(phi, mu, cc);
    SignedLog im;
    const int par = phi.parity();
    if (par != 0) {
        im = ip;
        if (par < 0) im.sign = -im.sign;
    } else {
        im = lobe_sum(phi, -mu, cc);
    }
    if (sgn < 0) im.sign = -im.sign;
    SignedLog tot = accumulate({ip, im});
    // Prefactor: Ncat pi^{-1/4} e^{-d0^2/2 + d0^2/(4 cc)} e^{log_norm}.
    tot.log_abs += 0.5 * std::log(c.norm_sq()) - 0.25 * kLogPi -
                   0.5 * d0 * d0 + d0 * d0 / (4.0 * cc) + phi.log_norm;
    return tot;
}

double wf_fidelity_cat(const CatSpec& c, const PolyGaussWavefunction& phi) {
    const SignedLog ip = wf_inner_cat(c, phi);
    if (ip.sign == 0) return 0.0;
    return std::exp(2.0 * ip.log_abs);
}

PolyGaussWavefunction wf_squeezed_fock1(double s) {
    if (!(s > 0.0)) throw DimensionError("wf_squeezed_fock1: s must be > 0");
    PolyGaussWavefunction phi;
    phi.log_c = {kNegInf, 0.0};
    phi.sign = {0, 1};
    phi.inv_var = 1.0 / (s * s);
    phi.log_norm = 0.5 * std::log(2.0) - 0.25 * kLogPi - 1.5 * std::log(s);
    return phi;
}

PolyGaussWavefunction wf_vacuum() {
    PolyGaussWavefunction phi;
    phi.log_c = {0.0};
    phi.sign = {1};
    phi.inv_var = 1.0;
    phi.log_norm = -0.25 * kLogPi;
    return phi;
}

PolyGaussWavefunction wf_cat(const CatSpec& c) {
    const double u = std::numbers::sqrt2 * c.gamma;  // sinh/cosh argument scale
    if (u == 0.0) return wf_vacuum();                // even cat of size 0

    // Taylor-expand {sinh, cosh}(u x) far enough that the truncated tail is
    // below 1e-20 relative over the x-range any overlap integral probes.
    const double x_max = std::numbers::sqrt2 * c.gamma + 12.0;
    const double umax = u * x_max;
    const double needed = std::max(umax, 1.0) - std::log(2.0) - 46.0;
    const int start = c.parity == Parity::Odd ? 1 : 0;
    std::vector<double> lc;
    std::vector<int8_t> sg;
    const double lu = std::log(u);
    for (int n = start; n <= 810; n += 2) {
        lc.resize(n + 1, kNegInf);
        sg.resize(n + 1, 0);
        lc[n] = n * lu - std::lgamma(n + 1.0);
        sg[n] = 1;
        if (n >= umax && lc[n] + n * std::log(x_max) < needed) break;
    }
    PolyGaussWavefunction phi;
    phi.log_c = std::move(lc);
    phi.sign = std::move(sg);
    phi.inv_var = 1.0;
    phi.log_norm = 0.0;
    return wf_normalize(phi).first;
}

PolyGaussWavefunction wf_multiply(const PolyGaussWavefunction& a,
                                  const PolyGaussWavefunction& b) {
    PolyGaussWavefunction out;
    convolve(a, b, out.log_c, out.sign);
    out.inv_var = a.inv_var + b.inv_var;
    out.log_norm = a.log_norm + b.log_norm;
    return out;
}

PolyGaussWavefunction wf_scale_arg(const PolyGaussWavefunction& phi,
                                   double lambda) {
    if (!(lambda > 0.0)) throw DimensionError("wf_scale_arg: lambda must be > 0");
    PolyGaussWavefunction out = phi;
    const double ll = std::log(lambda);
    for (size_t i = 0; i < out.log_c.size(); ++i) out.log_c[i] -= i * ll;
    out.inv_var = phi.inv_var / (lambda * lambda);
    return out;
}

}  // namespace catamp
