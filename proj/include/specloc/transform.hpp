#ifndef SPECLOC_TRANSFORM_HPP
#define SPECLOC_TRANSFORM_HPP

#include "specloc/field.hpp"

namespace specloc {

// Discrete Fourier convention
// ---------------------------
//   forward:  F(xi_k) = (2*pi)^{-N/2} * h^N     * sum_j f(x_j) e^{-i<x_j, xi_k>}
//   inverse:  f(x_j)  = (2*pi)^{-N/2} * (2*pi/L)^N * sum_k F(xi_k) e^{+i<x_j, xi_k>}
//
// i.e. the forward side is the plain Riemann sum for the continuum transform
// (2*pi)^{-N/2} \int f e^{-i<x,xi>} dx with lattice weight h^N, and the inverse
// side the Riemann sum for the inversion integral with weight (2*pi/L)^N.
// inverse(forward(f)) == f exactly (up to roundoff), and Parseval holds
// exactly between the weighted norms of field.hpp:
//   sum |F_k|^2 (2*pi/L)^N  ==  sum |f_j|^2 h^N.
//
// With x_j = j_c h, xi_k = k_c (2*pi/L) and centered integers j_c, k_c, the
// phase is e^{-2*pi*i j_c k_c / n}; reindexing mod n maps the sums onto plain
// DFTs, which is how they are evaluated (FFTW, complex-to-complex).

SpectralField forward_transform(const SpatialField& f);
SpatialField inverse_transform(const SpectralField& g);

/// Brute-force forward transform by explicit double summation.  Oracle path:
/// shares no arithmetic with forward_transform.  Rejects grids with more than
/// `max_points` total points.
SpectralField direct_transform_reference(const SpatialField& f,
                                         std::size_t max_points = 4096);

}  // namespace specloc

#endif
