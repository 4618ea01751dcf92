#pragma once

#include "catamp/log_complex.hpp"

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace catamp {

using Cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NonIntegrableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Trace fell below the representable linear range; carries the log-scale value.
struct UnderflowError : std::runtime_error {
    double log_trace;
    explicit UnderflowError(double lt)
        : std::runtime_error("trace underflow; log-scale trace = " +
                             std::to_string(lt)),
          log_trace(lt) {}
};

/// amplitude * exp(q^T quad q + lin^T q) over q = (x1,p1,...,xN,pN).
/// quad is complex symmetric with negative-semidefinite real part; any
/// constant exponent offset is folded into the amplitude.
struct GaussianTerm {
    LogComplex amplitude;
    CMatrix quad;
    CVector lin;

    int modes() const { return static_cast<int>(lin.size()) / 2; }
};

enum class Kind { State, Operator };

/// Finite sum of complex Gaussians: a state or measurement operator in the
/// Wigner picture. Immutable after construction.
class WignerObject {
  public:
    WignerObject(std::vector<GaussianTerm> terms, int modes,
                 Kind kind = Kind::State);

    /// 0-mode unit (single term, amplitude 1): identity for tensor.
    static WignerObject unit();
    /// N-mode constant-one operator (zero matrices); identity for multiply.
    static WignerObject constant_op(int modes, LogComplex amp = LogComplex::one());

    const std::vector<GaussianTerm>& terms() const { return terms_; }
    int modes() const { return modes_; }
    Kind kind() const { return kind_; }
    int term_count() const { return static_cast<int>(terms_.size()); }

    WignerObject with_kind(Kind k) const { return {terms_, modes_, k}; }
    WignerObject scaled(LogComplex f) const;

  private:
    std::vector<GaussianTerm> terms_;
    int modes_;
    Kind kind_;
};

/// Real invertible 2N x 2N linear quadrature transform, inverse cached.
class SymplecticMap {
  public:
    explicit SymplecticMap(RMatrix m);
    const RMatrix& matrix() const { return m_; }
    const RMatrix& inverse() const { return inv_; }
    int modes() const { return static_cast<int>(m_.rows()) / 2; }
    SymplecticMap then(const SymplecticMap& next) const;  // next ∘ this

  private:
    RMatrix m_;
    RMatrix inv_;
};

WignerObject tensor(const WignerObject& a, const WignerObject& b);
WignerObject apply_linear(const WignerObject& w, const SymplecticMap& m);
WignerObject multiply(const WignerObject& a, const WignerObject& b);

/// Closed-form Gaussian integral over the given quadrature coordinates
/// (indices into the 2N-vector); returns the object on the remaining ones.
WignerObject integrate_subset(const WignerObject& w,
                              const std::vector<int>& coords);

/// Low-level per-term form of integrate_subset: terms live on `dim`
/// coordinates, the result on dim - |coords| (which need not pair into
/// modes). No WignerObject bookkeeping.
std::vector<GaussianTerm> integrate_terms(const std::vector<GaussianTerm>& terms,
                                          const std::vector<int>& coords,
                                          int dim);

/// Substitute fixed values for the given coordinates.
WignerObject restrict_coords(const WignerObject& w,
                             const std::vector<int>& coords,
                             const std::vector<double>& values);

Cplx evaluate(const WignerObject& w, const RVector& q);

/// Integral over all of phase space, kept in log scale.
LogComplex integrate_all_log(const WignerObject& w);

/// (2pi)^N Tr-pairing integral of the two Wigner functions; real by
/// construction for physical inputs (checked, imaginary part dropped).
double overlap(const WignerObject& a, const WignerObject& b);

double purity(const WignerObject& w);

/// Rescale to unit trace; second element is the pre-normalization trace.
/// Throws UnderflowError (carrying the log-scale trace) when the trace is
/// below the representable linear range.
std::pair<WignerObject, double> normalize(const WignerObject& w);

}  // namespace catamp
