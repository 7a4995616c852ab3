#include "specloc/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specloc {

std::vector<std::pair<double, double>> bin_envelope(std::span<const double> u,
                                                    std::span<const double> v,
                                                    double lo, double hi,
                                                    int bins) {
    if (u.size() != v.size()) throw std::invalid_argument("bin_envelope: size mismatch");
    if (!(lo > 0) || !(hi > lo) || bins < 1)
        throw std::invalid_argument("bin_envelope: bad bin layout");
    double llo = std::log(lo), lhi = std::log(hi);
    std::vector<double> best(static_cast<std::size_t>(bins), 0.0);
    std::vector<bool> seen(static_cast<std::size_t>(bins), false);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < lo || u[i] > hi) continue;
        auto b = static_cast<std::size_t>((std::log(u[i]) - llo) / (lhi - llo) * bins);
        if (b >= static_cast<std::size_t>(bins)) b = static_cast<std::size_t>(bins) - 1;
        best[b] = seen[b] ? std::max(best[b], v[i]) : v[i];
        seen[b] = true;
    }
    std::vector<std::pair<double, double>> out;
    for (std::size_t b = 0; b < best.size(); ++b) {
        if (!seen[b] || !(best[b] > 0)) continue;
        double center = std::exp(llo + (lhi - llo) * (static_cast<double>(b) + 0.5) /
                                           static_cast<double>(bins));
        out.emplace_back(center, best[b]);
    }
    return out;
}

double LogLogFit::predict(double u) const {
    return std::pow(10.0, intercept + slope * std::log10(u));
}

LogLogFit fit_loglog(std::span<const std::pair<double, double>> pts) {
    if (pts.size() < 2) throw std::invalid_argument("fit_loglog: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [u, v] : pts) {
        double x = std::log10(u), y = std::log10(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(pts.size());
    double det = n * sxx - sx * sx;
    if (det == 0) throw std::invalid_argument("fit_loglog: degenerate abscissae");
    LogLogFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.u_lo = pts.front().first;
    fit.u_hi = pts.back().first;
    fit.points = static_cast<int>(pts.size());
    for (const auto& [u, v] : pts) {
        double dev = std::abs(std::log10(v) -
                              (fit.intercept + fit.slope * std::log10(u)));
        fit.max_residual = std::max(fit.max_residual, dev);
    }
    return fit;
}

}  // namespace specloc
