#ifndef SPECLOC_ORACLES_HPP
#define SPECLOC_ORACLES_HPP

#include <span>

#include "specloc/cutoff.hpp"
#include "specloc/field.hpp"
#include "specloc/symbol.hpp"

namespace specloc {

/// Resource guard for the brute-force reference paths.
struct OracleBudget {
    std::size_t max_points = 4096;  // cap on total lattice points n^dims
    double max_seconds = 60.0;      // wall-clock cap, checked inside the loops

    void check_points(std::size_t points, const char* what) const;
};

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// E_lambda f by explicit double summation: direct forward transform, symbol
/// weight, direct weighted inversion.  No FFT anywhere in this path.
SpatialField direct_partial_sum(const SpatialField& f, const SymbolParams& p,
                                const OracleBudget& budget = {});

struct SpacesideParams {
    double eta_step = 2e-4;    // quadrature step for the truncation kernel
    double x_step = 0.0;       // spatial grid step; 0 = auto from xi and t
    std::size_t max_points = std::size_t{1} << 22;
};

/// Independent spatial-side route to the localized multiplier: build the
/// truncation kernel Theta_t^{i tau} on a fine grid, multiply by psi_j, and
/// transform the product directly at the requested frequency.  dims 1 or 2;
/// no shared quadrature with localized_multiplier.
cplx spaceside_multiplier_oracle(const CutoffFamily& fam, int dims, int j,
                                 double tau, int m_order, double t,
                                 std::span<const double> xi,
                                 const SpacesideParams& params = {},
                                 const OracleBudget& budget = {1 << 22, 120.0});

}  // namespace specloc

#endif
