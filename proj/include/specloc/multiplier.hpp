#ifndef SPECLOC_MULTIPLIER_HPP
#define SPECLOC_MULTIPLIER_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specloc/cutoff.hpp"
#include "specloc/field.hpp"
#include "specloc/radial_table.hpp"

namespace specloc {

// Localized multipliers: the transform of [truncation kernel of radius t] x
// psi_j evaluated as the frequency-side convolution
//
//   m_t^{tau,j}(xi) = (2*pi)^{-N/2} \int_{|eta|<t} sigma_t(eta)
//                                   psihat_j(xi - eta) d eta,
//
// where sigma_t(eta) = (1 - (|eta|/t)^{2m})^{i tau} inside the ball of RADIUS
// t and psihat_j comes from the radial table (dilation identity).  Note: t is
// the ball radius here; the spectral level of expansion.hpp is lambda = t^{2m}.
// The value is radial in xi, so a scalar xi_radius suffices.

/// Sweep resolution rule: the eta quadrature step must give at least this
/// many samples per unit of u = dist * 2^j.
inline constexpr double kMinSamplesPerUnit = 16.0;

struct MultiplierContext {
    CutoffFamily fam;
    RadialTable table;           // dims-matched psi-hat profile
    double quad_step;            // eta quadrature step (defaults to table.step)
    std::vector<double> prefix;  // dims==3: trapezoid prefix of rho*psihat(rho)

    MultiplierContext(CutoffFamily f, RadialTable tab, double step = 0);

    int dims() const { return table.dims; }
    /// Largest j the resolution rule admits for this context.
    int max_j() const;
};

/// m_t^{tau,j} at |xi| = xi_radius.  Throws when the quadrature resolution
/// rule fails for this j or the table range cannot reach the needed radii.
cplx localized_multiplier(const MultiplierContext& ctx, int j, double tau,
                          int m_order, double t, double xi_radius);

// --- audits ------------------------------------------------------------

struct TailBound {
    double lhs;  // |m_t^j(xi)|, tau = 0
    double rhs;  // integral of |psihat| over {|y| > dist * 2^j}
    double u;    // dist * 2^j
};

/// tau = 0 comparison of the multiplier modulus against the tail integral of
/// |psihat| beyond dist * 2^j (the caller asserts lhs <= rhs * (1 + tol)).
TailBound tail_bound_check(const MultiplierContext& ctx, int j, double t,
                           double xi_radius);

struct DecayFit {
    int j = 0;
    double tau = 0;
    int m_order = 1;
    double fitted_c = 0;    // envelope near u = 1 (the on-sphere maximum)
    double fitted_n = 0;    // decay exponent of C / u^n on the fitted window
    double residual = 0;    // max |log10 deviation| over the fitted bins
    double range_lo = 0;    // fitted u-window
    double range_hi = 0;
    int points = 0;         // envelope bins entering the fit
};

struct EnvelopeSweep {
    std::vector<double> t_values{1.0, 2.0, 4.0};
    double u_max = 1100.0;   // sweep reaches dist * 2^j up to here
    int linear_points = 41;  // u in [0, 10]
    int log_points = 160;    // u in [10, u_max]
    double fit_lo = 10.0;    // fitted window in u = 1 + dist * 2^j
    double fit_hi = 1000.0;
    int bins = 24;
};

/// Upper envelope of |m_t^{tau,j}| over the sweep, binned in u = 1+dist*2^j,
/// with a least-squares log-log line over [fit_lo, fit_hi].
DecayFit envelope_decay_fit(const MultiplierContext& ctx, int j, double tau,
                            int m_order, const EnvelopeSweep& sweep = {});

struct RadiusDerivative {
    double lhs;        // |central difference of m in t| at step dt/2
    double rhs_shape;  // 2^j / (1 + epsilon0 * u)^n
    double u;          // dist * 2^j
    double dt;         // step of the returned difference
};

/// Central finite difference of the multiplier in the ball radius t (t > 1).
/// Throws when halving dt changes the difference by more than 1%.
/// epsilon0 and n parametrize the reported bound shape (from a prior decay
/// fit; epsilon0 in (0, 1]).
RadiusDerivative radius_derivative_check(const MultiplierContext& ctx, int j,
                                         double tau, int m_order, double t,
                                         double xi_radius, double dt,
                                         double epsilon0, double n);

/// Fit epsilon0 in (0, 1]: tightest constant making C * 2^j / (1+eps*u)^n
/// hug the measured derivative samples (minimax in log10 over the samples).
double fit_epsilon0(std::span<const std::pair<double, double>> u_and_lhs,
                    double n, int j);

// --- evaluated sample matrices & CSV export ----------------------------

struct MultiplierSample {
    int j;
    double tau;
    int m_order;
    std::vector<double> t_values;  // sorted positive
    std::vector<double> xi_radii;  // sorted nonnegative
    std::vector<cplx> values;      // row-major [t][xi]

    void export_csv(const std::string& path) const;  // j,tau,t,xi_radius,re,im
};

MultiplierSample sample_multiplier(const MultiplierContext& ctx, int j,
                                   double tau, int m_order,
                                   std::vector<double> t_values,
                                   std::vector<double> xi_radii);

void export_decay_fits_csv(std::span<const DecayFit> fits,
                           const std::string& path);  // j,tau,C,n,residual

}  // namespace specloc

#endif
