#include "catamp/gaussian.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace catamp {

namespace {

constexpr double kPruneNats = 300.0;

void check_term(const GaussianTerm& t, int modes, const char* where) {
    const int d = 2 * modes;
    if (t.quad.rows() != d || t.quad.cols() != d ||
        static_cast<int>(t.lin.size()) != d)
        throw DimensionError(std::string(where) + ": term dimensions do not match mode count");
}

}  // namespace

WignerObject::WignerObject(std::vector<GaussianTerm> terms, int modes, Kind kind)
    : modes_(modes), kind_(kind) {
    if (modes < 0) throw DimensionError("WignerObject: negative mode count");
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms) {
        check_term(t, modes, "WignerObject");
        top = std::max(top, t.amplitude.log_mag);
    }
    terms_.reserve(terms.size());
    for (auto& t : terms)
        if (!t.amplitude.is_zero() && t.amplitude.log_mag > top - kPruneNats)
            terms_.push_back(std::move(t));
}

WignerObject WignerObject::unit() {
    GaussianTerm t{LogComplex::one(), CMatrix::Zero(0, 0), CVector::Zero(0)};
    return {{t}, 0, Kind::Operator};
}

WignerObject WignerObject::constant_op(int modes, LogComplex amp) {
    GaussianTerm t{amp, CMatrix::Zero(2 * modes, 2 * modes),
                   CVector::Zero(2 * modes)};
    return {{t}, modes, Kind::Operator};
}

WignerObject WignerObject::scaled(LogComplex f) const {
    std::vector<GaussianTerm> out = terms_;
    for (auto& t : out) t.amplitude *= f;
    return {std::move(out), modes_, kind_};
}

SymplecticMap::SymplecticMap(RMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() % 2 != 0)
        throw DimensionError("SymplecticMap: matrix must be 2N x 2N");
    Eigen::FullPivLU<RMatrix> lu(m_);
    if (!lu.isInvertible())
        throw DimensionError("SymplecticMap: matrix is singular");
    inv_ = lu.inverse();
}

SymplecticMap SymplecticMap::then(const SymplecticMap& next) const {
    return SymplecticMap(next.m_ * m_);
}

WignerObject tensor(const WignerObject& a, const WignerObject& b) {
    const int da = 2 * a.modes();
    const int db = 2 * b.modes();
    std::vector<GaussianTerm> out;
    out.reserve(a.terms().size() * b.terms().size());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) {
            GaussianTerm t;
            t.amplitude = ta.amplitude * tb.amplitude;
            t.quad = CMatrix::Zero(da + db, da + db);
            t.quad.topLeftCorner(da, da) = ta.quad;
            t.quad.bottomRightCorner(db, db) = tb.quad;
            t.lin = CVector::Zero(da + db);
            t.lin.head(da) = ta.lin;
            t.lin.tail(db) = tb.lin;
            out.push_back(std::move(t));
        }
    const Kind kind = (a.kind() == Kind::State || b.kind() == Kind::State)
                          ? Kind::State
                          : Kind::Operator;
    return {std::move(out), a.modes() + b.modes(), kind};
}

WignerObject apply_linear(const WignerObject& w, const SymplecticMap& m) {
    if (m.modes() != w.modes())
        throw DimensionError("apply_linear: map and object mode counts differ");
    const RMatrix& inv = m.inverse();
    std::vector<GaussianTerm> out;
    out.reserve(w.terms().size());
    for (const auto& t : w.terms()) {
        GaussianTerm s;
        s.amplitude = t.amplitude;
        CMatrix q = inv.transpose() * t.quad * inv;
        s.quad = 0.5 * (q + q.transpose());  // re-symmetrize
        s.lin = inv.transpose() * t.lin;
        out.push_back(std::move(s));
    }
    return {std::move(out), w.modes(), w.kind()};
}

WignerObject multiply(const WignerObject& a, const WignerObject& b) {
    if (a.modes() != b.modes())
        throw DimensionError("multiply: mode counts differ");
    std::vector<GaussianTerm> out;
    out.reserve(a.terms().size() * b.terms().size());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) {
            GaussianTerm t;
            t.amplitude = ta.amplitude * tb.amplitude;
            t.quad = ta.quad + tb.quad;
            t.lin = ta.lin + tb.lin;
            out.push_back(std::move(t));
        }
    const Kind kind = (a.kind() == Kind::State || b.kind() == Kind::State)
                          ? Kind::State
                          : Kind::Operator;
    return {std::move(out), a.modes(), kind};
}

namespace {

// log(sqrt(det M)) on the principal branch, via eigenvalues. Also verifies
// the integral converges: the symmetric real part of M must be positive
// definite.
LogComplex log_sqrt_det_checked(const CMatrix& m, int term_index) {
    RMatrix re = m.real();
    re = 0.5 * (re + re.transpose());
    Eigen::SelfAdjointEigenSolver<RMatrix> sa(re);
    if (sa.eigenvalues().minCoeff() <= 1e-14)
        throw NonIntegrableError(
            "integrate_subset: term " + std::to_string(term_index) +
            " has a non-decaying Gaussian along an integrated coordinate");
    Eigen::ComplexEigenSolver<CMatrix> es(m);
    double lm = 0.0, ph = 0.0;
    for (int i = 0; i < m.rows(); ++i) {
        const Cplx ev = es.eigenvalues()(i);
        lm += 0.5 * std::log(std::abs(ev));
        ph += 0.5 * std::arg(ev);
    }
    return {lm, LogComplex::wrap(ph)};
}

std::vector<int> complement(const std::vector<int>& coords, int dim,
                            const char* where) {
    std::vector<bool> in(dim, false);
    for (int c : coords) {
        if (c < 0 || c >= dim || in[c])
            throw DimensionError(std::string(where) +
                                 ": coordinate index out of range or repeated");
        in[c] = true;
    }
    std::vector<int> rest;
    for (int i = 0; i < dim; ++i)
        if (!in[i]) rest.push_back(i);
    return rest;
}

}  // namespace

std::vector<GaussianTerm> integrate_terms(const std::vector<GaussianTerm>& terms,
                                          const std::vector<int>& coords,
                                          int dim) {
    const int k = static_cast<int>(coords.size());
    const std::vector<int> rest = complement(coords, dim, "integrate_terms");
    const int r = static_cast<int>(rest.size());

    const double log_pref = 0.5 * k * std::log(std::numbers::pi);
    std::vector<GaussianTerm> out;
    out.reserve(terms.size());
    int idx = -1;
    for (const auto& t : terms) {
        ++idx;
        CMatrix a_ss(k, k), a_sr(k, r), a_rr(r, r);
        CVector b_s(k), b_r(r);
        for (int i = 0; i < k; ++i) {
            b_s(i) = t.lin(coords[i]);
            for (int j = 0; j < k; ++j) a_ss(i, j) = t.quad(coords[i], coords[j]);
            for (int j = 0; j < r; ++j) a_sr(i, j) = t.quad(coords[i], rest[j]);
        }
        for (int i = 0; i < r; ++i) {
            b_r(i) = t.lin(rest[i]);
            for (int j = 0; j < r; ++j) a_rr(i, j) = t.quad(rest[i], rest[j]);
        }
        const CMatrix m = -a_ss;
        const LogComplex lsd = log_sqrt_det_checked(m, idx);
        const CMatrix minv = m.fullPivLu().inverse();

        GaussianTerm s;
        const Cplx quart = 0.25 * (b_s.transpose() * minv * b_s)(0);
        s.amplitude = t.amplitude * LogComplex::exp_of(quart) *
                      LogComplex{log_pref - lsd.log_mag, -lsd.phase};
        CMatrix q = a_rr + a_sr.transpose() * minv * a_sr;
        s.quad = 0.5 * (q + q.transpose());
        s.lin = b_r + a_sr.transpose() * minv * b_s;
        out.push_back(std::move(s));
    }
    return out;
}

WignerObject integrate_subset(const WignerObject& w,
                              const std::vector<int>& coords) {
    const int dim = 2 * w.modes();
    const int r = dim - static_cast<int>(coords.size());
    if (r % 2 != 0)
        throw DimensionError("integrate_subset: remaining coordinates must pair into modes");
    return {integrate_terms(w.terms(), coords, dim), r / 2, w.kind()};
}

WignerObject restrict_coords(const WignerObject& w,
                             const std::vector<int>& coords,
                             const std::vector<double>& values) {
    if (coords.size() != values.size())
        throw DimensionError("restrict_coords: coords/values length mismatch");
    const int dim = 2 * w.modes();
    const int k = static_cast<int>(coords.size());
    const std::vector<int> rest = complement(coords, dim, "restrict_coords");
    const int r = static_cast<int>(rest.size());
    if (r % 2 != 0)
        throw DimensionError("restrict_coords: remaining coordinates must pair into modes");

    CVector v(k);
    for (int i = 0; i < k; ++i) v(i) = values[i];

    std::vector<GaussianTerm> out;
    out.reserve(w.terms().size());
    for (const auto& t : w.terms()) {
        CMatrix a_ss(k, k), a_rs(r, k), a_rr(r, r);
        CVector b_s(k), b_r(r);
        for (int i = 0; i < k; ++i) {
            b_s(i) = t.lin(coords[i]);
            for (int j = 0; j < k; ++j) a_ss(i, j) = t.quad(coords[i], coords[j]);
        }
        for (int i = 0; i < r; ++i) {
            b_r(i) = t.lin(rest[i]);
            for (int j = 0; j < k; ++j) a_rs(i, j) = t.quad(rest[i], coords[j]);
            for (int j = 0; j < r; ++j) a_rr(i, j) = t.quad(rest[i], rest[j]);
        }
        GaussianTerm s;
        const Cplx off = (v.transpose() * a_ss * v)(0) + (b_s.transpose() * v)(0);
        s.amplitude = t.amplitude * LogComplex::exp_of(off);
        s.quad = a_rr;
        s.lin = b_r + 2.0 * a_rs * v;
        out.push_back(std::move(s));
    }
    return {std::move(out), r / 2, w.kind()};
}

Cplx evaluate(const WignerObject& w, const RVector& q) {
    if (q.size() != 2 * w.modes())
        throw DimensionError("evaluate: point dimension mismatch");
    const CVector qc = q.cast<Cplx>();
    std::vector<LogComplex> vals;
    vals.reserve(w.terms().size());
    for (const auto& t : w.terms()) {
        const Cplx e = (qc.transpose() * t.quad * qc)(0) + (t.lin.transpose() * qc)(0);
        vals.push_back(t.amplitude * LogComplex::exp_of(e));
    }
    return log_sum(vals).to_complex();
}

LogComplex integrate_all_log(const WignerObject& w) {
    std::vector<int> all(2 * w.modes());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    const WignerObject scalar = integrate_subset(w, all);
    std::vector<LogComplex> vals;
    vals.reserve(scalar.terms().size());
    for (const auto& t : scalar.terms()) vals.push_back(t.amplitude);
    return log_sum(vals);
}

double overlap(const WignerObject& a, const WignerObject& b) {
    const WignerObject prod = multiply(a, b);
    std::vector<int> all(2 * prod.modes());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    const WignerObject scalar = integrate_subset(prod, all);
    std::vector<LogComplex> vals;
    double scale = 0.0;
    for (const auto& t : scalar.terms()) {
        vals.push_back(t.amplitude);
        scale = std::max(scale, std::exp(t.amplitude.log_mag));
    }
    const Cplx val =
        log_sum(vals).to_complex() *
        std::pow(2.0 * std::numbers::pi, static_cast<double>(a.modes()));
    // Orthogonal pairs cancel to zero; judge the residual imaginary part
    // against the size of the contributions, not the (tiny) sum.
    if (std::abs(val.imag()) > 1e-9 * std::max(std::abs(val.real()), scale))
        throw NonIntegrableError("overlap: result has a non-negligible imaginary part");
    return val.real();
}

double purity(const WignerObject& w) { return overlap(w, w); }

std::pair<WignerObject, double> normalize(const WignerObject& w) {
    const LogComplex tr = integrate_all_log(w);
    // exp(-644.6) ~ 1e-280: below this, hand back the log-scale trace.
    if (tr.is_zero() || tr.log_mag < -644.6) throw UnderflowError(tr.log_mag);
    const double trace = tr.to_complex().real();
    if (!(trace > 0.0) ||
        std::abs(tr.to_complex().imag()) > 1e-9 * std::abs(trace))
        throw NonIntegrableError("normalize: trace is not positive real");
    return {w.scaled(LogComplex::one() / LogComplex::from_real(trace)), trace};
}

}  // namespace catamp
