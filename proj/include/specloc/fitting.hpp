#ifndef SPECLOC_FITTING_HPP
#define SPECLOC_FITTING_HPP

#include <span>
#include <utility>
#include <vector>

namespace specloc {

/// Upper envelope of scattered (u, v) data over log-spaced bins in [lo, hi].
/// Returns (bin center, max v in bin) for nonempty bins with positive max.
std::vector<std::pair<double, double>> bin_envelope(std::span<const double> u,
                                                    std::span<const double> v,
                                                    double lo, double hi,
                                                    int bins);

struct LogLogFit {
    double slope = 0;         // d log10(v) / d log10(u)
    double intercept = 0;     // log10(v) at log10(u) = 0
    double max_residual = 0;  // max |log10 deviation| over the fitted points
    double u_lo = 0, u_hi = 0;
    int points = 0;

    double predict(double u) const;
};

/// Least-squares line through (log10 u, log10 v); requires >= 2 points.
LogLogFit fit_loglog(std::span<const std::pair<double, double>> pts);

}  // namespace specloc

#endif
