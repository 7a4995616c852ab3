#ifndef SPECLOC_SYMBOL_HPP
#define SPECLOC_SYMBOL_HPP

#include <span>

#include "specloc/field.hpp"

namespace specloc {

/// Parameters of the truncated imaginary-order Riesz multiplier
///   sigma(xi) = (1 - |xi|^{2m}/lambda)^{i tau}   for |xi|^{2m} < lambda,
///             = 0                                 otherwise (strictly).
/// lambda is the spectral level of the order-m polyharmonic operator; the
/// corresponding ball radius is R = lambda^{1/(2m)}.  Both parametrizations
/// are exposed (see radius() / from_radius()).
struct SymbolParams {
    int m_order;    // m >= 1
    double lambda;  // > 0
    double tau;     // finite

    SymbolParams(int m, double lam, double t) : m_order(m), lambda(lam), tau(t) {
        if (m_order < 1) throw std::invalid_argument("SymbolParams: m_order < 1");
        if (!(lambda > 0) || !std::isfinite(lambda))
            throw std::invalid_argument("SymbolParams: lambda must be positive");
        if (!std::isfinite(tau)) throw std::invalid_argument("SymbolParams: tau not finite");
    }

    double radius() const { return std::pow(lambda, 1.0 / (2.0 * m_order)); }

    static SymbolParams from_radius(int m, double radius, double tau) {
        if (!(radius > 0)) throw std::invalid_argument("SymbolParams: radius must be positive");
        return SymbolParams(m, std::pow(radius, 2.0 * m), tau);
    }
};

/// x^m by repeated multiplication (m >= 0).
double pow_int(double x, int m);

/// Symbol value from |xi|^2.  Unit modulus strictly inside the ball, exactly 0
/// on and outside the boundary.  (1-u)^{i tau} is computed as
/// exp(i tau log(1-u)) with the real logarithm; 0 < 1-u <= 1 on the open ball.
cplx evaluate_symbol_radial(const SymbolParams& p, double xi_norm_sq);

/// Symbol value at a frequency vector.
cplx evaluate_symbol(const SymbolParams& p, std::span<const double> xi);

/// Pointwise product coeffs'(xi_k) = evaluate_symbol(p, xi_k) * coeffs(xi_k).
SpectralField apply_multiplier(const SymbolParams& p, const SpectralField& g);

}  // namespace specloc

#endif
