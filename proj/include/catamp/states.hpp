#pragma once

#include "catamp/gaussian.hpp"

namespace catamp {

/// Quadrature squeezing in dB. xi_p <= 0 is the squeezed (p) quadrature;
/// the anti-squeezed level is tied to it by xi_x = -epsilon * xi_p with
/// epsilon >= 1 (epsilon = 1 is pure squeezing).
struct SqueezingSpec {
    double xi_p = 0.0;
    double epsilon = 1.0;

    SqueezingSpec(double xi_p_db, double eps);
    /// Pure squeezing of level `xi_db` >= 0 dB.
    static SqueezingSpec pure(double xi_db) { return {-xi_db, 1.0}; }

    double xi_x() const { return -epsilon * xi_p; }
    double s_x() const { return std::pow(10.0, xi_x() / 20.0); }
    double s_p() const { return std::pow(10.0, xi_p / 20.0); }
    /// Closed-form purity of the corresponding squeezed vacuum.
    double purity() const { return std::pow(10.0, (epsilon - 1.0) * xi_p / 20.0); }
};

enum class Parity { Even, Odd };

inline double parity_sign(Parity p) { return p == Parity::Even ? 1.0 : -1.0; }

/// Cat state kappa_pm(gamma) = N (|gamma> pm |-gamma>).
struct CatSpec {
    double gamma = 0.0;
    Parity parity = Parity::Even;

    CatSpec(double g, Parity p);
    /// N^2 = 1 / (2 (1 pm e^{-2 gamma^2})).
    double norm_sq() const;
};

WignerObject vacuum();
WignerObject coherent(double gamma);
WignerObject squeezed_vacuum(const SqueezingSpec& s);
/// Four Gaussians: two displaced lobes and two oscillating interference
/// terms (imaginary linear coefficient in p).
WignerObject cat(const CatSpec& c);
/// Fock-1 Wigner (2(x^2+p^2)-1)e^{-x^2-p^2}/pi is not Gaussian; used only
/// as a test oracle via the gamma->0 odd-cat limit. Not provided here.

/// On-off detector: Pi = I - |0><0|, two terms (1/2pi and -(1/pi)e^{-x^2-p^2}).
WignerObject op_apd();

/// |kappa(c)><kappa(c)| as a measurement operator (same terms as cat(c)).
WignerObject op_cat_projector(const CatSpec& c);

/// Boxcar x-quadrature acceptance window. Widths and centers are in shot
/// noise units (1 SNU = 1/sqrt(2) absolute quadrature units). exact means
/// the zero-width Dirac slice: reductions then yield probability densities
/// (per absolute quadrature unit), not probabilities.
struct MeasurementSpec {
    double center_snu = 0.0;
    double width_snu = 0.0;
    double angle = 0.0;  // only 0 (x quadrature) used by shipped circuits
    bool exact = false;
};

MeasurementSpec op_homodyne_window(double q0_snu, double width_snu,
                                   double angle = 0.0);
MeasurementSpec op_homodyne_exact(double q0_snu = 0.0, double angle = 0.0);

constexpr double kSnuToAbs = 0.70710678118654752440;  // 1/sqrt(2)

}  // namespace catamp
