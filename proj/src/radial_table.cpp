#include "specloc/radial_table.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "specloc/field.hpp"
#include "specloc/parallel.hpp"
#include "specloc/transform.hpp"

namespace specloc {

double RadialTable::value(double rho) const {
    rho = std::abs(rho);
    double q = rho / step;
    auto i1 = static_cast<long long>(q);
    if (i1 + 1 >= static_cast<long long>(values.size())) return 0.0;
    double w = q - static_cast<double>(i1);
    // Catmull-Rom through the four surrounding nodes; the profile is even, so
    // the node left of 0 mirrors to +step
    auto at = [&](long long i) {
        if (i < 0) i = -i;
        return i < static_cast<long long>(values.size()) ? values[static_cast<std::size_t>(i)] : 0.0;
    };
    double p0 = at(i1 - 1), p1 = at(i1), p2 = at(i1 + 1), p3 = at(i1 + 2);
    return p1 + 0.5 * w * (p2 - p0 +
                           w * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                w * (3.0 * (p1 - p2) + p3 - p0)));
}

double RadialTable::value_j(int j, double rho) const {
    if (j < 1) throw std::invalid_argument("RadialTable::value_j: j must be >= 1");
    return std::ldexp(value(std::ldexp(rho, j)), j * dims);
}

double RadialTable::abs_tail_integral(double u0) const {
    if (u0 < 0) u0 = 0;
    double surface = dims == 1 ? 2.0 : (dims == 2 ? 2.0 * kPi : 4.0 * kPi);
    auto integrand = [&](std::size_t q) {
        double rho = step * static_cast<double>(q);
        double w = dims == 1 ? 1.0 : (dims == 2 ? rho : rho * rho);
        return std::abs(values[q]) * w;
    };
    std::size_t q0 = static_cast<std::size_t>(std::ceil(u0 / step));
    if (q0 >= values.size()) return 0.0;
    double s = 0.5 * integrand(q0);
    for (std::size_t q = q0 + 1; q + 1 < values.size(); ++q) s += integrand(q);
    s += 0.5 * integrand(values.size() - 1);
    s *= step;
    // partial first cell [u0, q0*step]
    if (q0 > 0) {
        double rho = u0;
        double w = dims == 1 ? 1.0 : (dims == 2 ? rho : rho * rho);
        double lo = std::abs(value(u0)) * w;
        s += 0.5 * (lo + integrand(q0)) * (step * static_cast<double>(q0) - u0);
    }
    return surface * s;
}

void RadialTable::export_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("RadialTable::export_csv: cannot open " + path);
    out << "rho,psi_hat_real\n";
    char buf[64];
    for (std::size_t q = 0; q < values.size(); ++q) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n",
                      step * static_cast<double>(q), values[q]);
        out << buf;
    }
}

namespace {

RadialTable tabulate_1d(const CutoffFamily& fam, const RadialTableParams& p) {
    // periodic embedding: extent = 2*pi/step gives frequency spacing == step.
    // The grid Nyquist sits at least 512 beyond rho_max so fold-back from the
    // transform tail stays below the table's own noise floor.
    double extent = 2.0 * kPi / p.step;
    auto count = static_cast<std::size_t>(
        std::ceil(2.0 * (p.rho_max + 512.0) / p.step));
    std::size_t n = 8;
    while (n < count) n *= 2;
    if (n > p.max_points)
        throw std::length_error("tabulate_psi_hat: embedding exceeds the point cap");

    double outer = fam.outer();
    if (extent < 2.0 * 5.0 * outer)
        throw std::invalid_argument("tabulate_psi_hat: embedding too short for the support margin");
    double h = extent / static_cast<double>(n);
    // transition width of psi's sharpest feature is inner()/2
    if (h > fam.inner() / 16.0)
        throw std::invalid_argument("tabulate_psi_hat: embedding grid too coarse for psi");

    GridSpec spec(1, static_cast<int>(n), extent);
    std::vector<cplx> samples(n);
    for (std::size_t i = 0; i < n; ++i)
        samples[i] = fam.psi(std::abs(spec.coord(static_cast<int>(i))));
    SpectralField F = forward_transform(SpatialField(spec, std::move(samples)));

    RadialTable tab;
    tab.dims = 1;
    tab.step = p.step;
    auto nrho = static_cast<std::size_t>(std::floor(p.rho_max / p.step)) + 1;
    nrho = std::min(nrho, n / 2);
    tab.values.resize(nrho);
    double peak = 0;
    for (const cplx& z : F.coeffs) peak = std::max(peak, std::abs(z));
    for (std::size_t q = 0; q < nrho; ++q) {
        const cplx& z = F.coeffs[n / 2 + q];  // centered order: rho = q*step
        if (std::abs(z.imag()) > 1e-10 * peak)
            throw std::runtime_error("tabulate_psi_hat: transform not real (symmetry broken)");
        tab.values[q] = z.real();
    }
    return tab;
}

// N = 2: psi_hat(rho) = int_0^b psi(s) J0(rho s) s ds
// N = 3: psi_hat(rho) = sqrt(2/pi) / rho * int_0^b psi(s) sin(rho s) s ds
// (midpoint rule; the integrand is smooth with compact support, so the
// uniform rule converges spectrally as long as quad_step * rho stays small)
RadialTable tabulate_radial(const CutoffFamily& fam, int dims,
                            const RadialTableParams& p) {
    double outer = fam.outer();
    double hs = p.quad_step;
    if (hs * p.rho_max > 0.5)
        throw std::invalid_argument("tabulate_psi_hat: quad_step too coarse for rho_max");
    auto ns = static_cast<std::size_t>(std::ceil(outer / hs));
    auto nrho = static_cast<std::size_t>(std::floor(p.rho_max / p.step)) + 1;
    if (ns * nrho > 64 * p.max_points)
        throw std::length_error("tabulate_psi_hat: radial quadrature exceeds the budget");

    std::vector<double> s(ns), ps(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        s[i] = (static_cast<double>(i) + 0.5) * hs;
        ps[i] = fam.psi(s[i]);
    }

    RadialTable tab;
    tab.dims = dims;
    tab.step = p.step;
    tab.values.resize(nrho);
    parallel_for(nrho, [&](std::size_t q0, std::size_t q1) {
        for (std::size_t q = q0; q < q1; ++q) {
            double rho = p.step * static_cast<double>(q);
            double acc = 0;
            if (dims == 2) {
                for (std::size_t i = 0; i < ns; ++i)
                    acc += ps[i] * std::cyl_bessel_j(0.0, rho * s[i]) * s[i];
                tab.values[q] = acc * hs;
            } else {
                if (rho == 0) {
                    for (std::size_t i = 0; i < ns; ++i) acc += ps[i] * s[i] * s[i];
                    tab.values[q] = std::sqrt(2.0 / kPi) * acc * hs;
                } else {
                    for (std::size_t i = 0; i < ns; ++i)
                        acc += ps[i] * std::sin(rho * s[i]) * s[i];
                    tab.values[q] = std::sqrt(2.0 / kPi) * acc * hs / rho;
                }
            }
        }
    });
    return tab;
}

}  // namespace

RadialTable tabulate_psi_hat(const CutoffFamily& fam, int dims,
                             const RadialTableParams& params) {
    if (dims < 1 || dims > 3)
        throw std::invalid_argument("tabulate_psi_hat: dims must be 1, 2 or 3");
    if (!(params.step > 0) || !(params.rho_max > params.step))
        throw std::invalid_argument("tabulate_psi_hat: bad table resolution");
    return dims == 1 ? tabulate_1d(fam, params) : tabulate_radial(fam, dims, params);
}

}  // namespace specloc
