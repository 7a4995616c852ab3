#include "specloc/oracles.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace specloc {

void OracleBudget::check_points(std::size_t points, const char* what) const {
    if (points > max_points)
        throw budget_error(std::string(what) +
                           ": lattice point count exceeds the oracle budget");
}

namespace {

using clock_type = std::chrono::steady_clock;

struct Deadline {
    clock_type::time_point end;
    explicit Deadline(double seconds)
        : end(clock_type::now() +
              std::chrono::duration_cast<clock_type::duration>(
                  std::chrono::duration<double>(seconds))) {}
    void check(const char* what) const {
        if (clock_type::now() > end)
            throw budget_error(std::string(what) + ": oracle wall-clock budget exceeded");
    }
};

// symbol written out locally: the oracle shares no arithmetic with the
// library path
cplx oracle_symbol(double s, double t, int m_order, double tau) {
    double ratio2 = (s / t) * (s / t);
    double u = 1.0;
    for (int i = 0; i < m_order; ++i) u *= ratio2;
    if (u >= 1.0) return 0.0;
    if (tau == 0.0) return 1.0;
    double phase = tau * std::log(1.0 - u);
    return cplx(std::cos(phase), std::sin(phase));
}

}  // namespace

SpatialField direct_partial_sum(const SpatialField& f, const SymbolParams& p,
                                const OracleBudget& budget) {
    const GridSpec& grid = f.spec;
    const std::size_t total = grid.point_count();
    budget.check_points(total, "direct_partial_sum");
    Deadline deadline(budget.max_seconds);

    std::vector<double> x(total * grid.dims), xi(total * grid.dims);
    for (std::size_t i = 0; i < total; ++i) {
        auto idx = grid.unflatten(i);
        for (int d = 0; d < grid.dims; ++d) {
            x[i * grid.dims + d] = grid.coord(idx[d]);
            xi[i * grid.dims + d] = grid.freq(idx[d]);
        }
    }

    // direct forward transform with the symbol weight folded in
    double fwd_scale = std::pow(grid.spacing() / std::sqrt(2.0 * kPi), grid.dims);
    std::vector<cplx> weighted(total);
    for (std::size_t k = 0; k < total; ++k) {
        double nsq = 0;
        for (int d = 0; d < grid.dims; ++d) {
            double c = xi[k * grid.dims + d];
            nsq += c * c;
        }
        double radius = std::sqrt(nsq);
        cplx sym = oracle_symbol(radius, p.radius(), p.m_order, p.tau);
        if (sym == cplx(0)) {
            weighted[k] = 0;
            continue;
        }
        cplx acc = 0;
        for (std::size_t jx = 0; jx < total; ++jx) {
            double phase = 0;
            for (int d = 0; d < grid.dims; ++d)
                phase += x[jx * grid.dims + d] * xi[k * grid.dims + d];
            acc += f.samples[jx] * cplx(std::cos(phase), -std::sin(phase));
        }
        weighted[k] = acc * fwd_scale * sym;
        if ((k & 63u) == 0) deadline.check("direct_partial_sum");
    }

    // direct inversion
    double inv_scale = std::pow(grid.freq_step() / std::sqrt(2.0 * kPi), grid.dims);
    std::vector<cplx> out(total);
    for (std::size_t jx = 0; jx < total; ++jx) {
        cplx acc = 0;
        for (std::size_t k = 0; k < total; ++k) {
            if (weighted[k] == cplx(0)) continue;
            double phase = 0;
            for (int d = 0; d < grid.dims; ++d)
                phase += x[jx * grid.dims + d] * xi[k * grid.dims + d];
            acc += weighted[k] * cplx(std::cos(phase), std::sin(phase));
        }
        out[jx] = acc * inv_scale;
        if ((jx & 63u) == 0) deadline.check("direct_partial_sum");
    }
    return SpatialField(grid, std::move(out));
}

cplx spaceside_multiplier_oracle(const CutoffFamily& fam, int dims, int j,
                                 double tau, int m_order, double t,
                                 std::span<const double> xi,
                                 const SpacesideParams& params,
                                 const OracleBudget& budget) {
    if (dims != 1 && dims != 2)
        throw std::invalid_argument("spaceside_multiplier_oracle: dims must be 1 or 2");
    if (static_cast<int>(xi.size()) != dims)
        throw std::invalid_argument("spaceside_multiplier_oracle: xi size != dims");
    if (j < 1 || !(t > 0))
        throw std::invalid_argument("spaceside_multiplier_oracle: bad j or t");
    Deadline deadline(budget.max_seconds);

    double xi_norm = 0;
    for (double c : xi) xi_norm += c * c;
    xi_norm = std::sqrt(xi_norm);

    // spatial support of psi_j and step fine enough for both oscillations
    double x_hi = fam.outer() * std::ldexp(1.0, j);
    double x_step = params.x_step > 0
                        ? params.x_step
                        : 2.0 * kPi / (64.0 * (t + xi_norm + 1.0));
    auto nx = static_cast<std::size_t>(std::ceil(x_hi / x_step));
    // ball-aligned radial cells for the truncation kernel
    auto ne = static_cast<std::size_t>(std::ceil(t / params.eta_step));
    double h_eta = t / static_cast<double>(ne);
    if (dims == 1)
        budget.check_points(nx + ne, "spaceside_multiplier_oracle");
    else
        budget.check_points(nx * nx / 4 + ne, "spaceside_multiplier_oracle");

    // the last few cells before the sphere edge are refined on a log grid in
    // the gap g = t - s (the symbol phase rotates like tau*log g there), with
    // the leading-order analytic remainder below the smallest node
    std::size_t edge_cells = std::min<std::size_t>(
        ne - 1, 16 * (1 + static_cast<std::size_t>(std::ceil(std::abs(tau)))));
    double G0 = static_cast<double>(edge_cells) * h_eta;
    auto edge_refined = [&](double W, auto f_of_g) -> cplx {
        int M = 512 + 128 * static_cast<int>(std::ceil(std::abs(tau)));
        double gmin = W * 1e-7;
        double dv = std::log(W / gmin) / M;
        cplx acc = 0;
        for (int k = 0; k <= M; ++k) {
            double g = gmin * std::exp(dv * k);
            cplx h = oracle_symbol(t - g, t, m_order, tau) * f_of_g(g) * g;
            acc += (k == 0 || k == M) ? 0.5 * h : h;
        }
        acc *= dv;
        cplx tail =
            tau == 0.0
                ? cplx(gmin)
                : cplx(std::cos(tau * std::log(2.0 * m_order * gmin / t)),
                       std::sin(tau * std::log(2.0 * m_order * gmin / t))) *
                      gmin / cplx(1.0, tau);
        return acc + tail * f_of_g(0.0);
    };

    std::vector<double> theta_axis(nx);
    std::vector<cplx> theta(nx);
    for (std::size_t p = 0; p < nx; ++p) {
        theta_axis[p] = (static_cast<double>(p) + 0.5) * x_step;
        double x = theta_axis[p];
        cplx acc = 0;
        if (dims == 1) {
            for (std::size_t i = 0; i + edge_cells < ne; ++i) {
                double s = (static_cast<double>(i) + 0.5) * h_eta;
                acc += oracle_symbol(s, t, m_order, tau) * std::cos(x * s);
            }
            acc *= h_eta;
            acc += edge_refined(G0, [&](double g) { return std::cos(x * (t - g)); });
            acc *= 2.0 / std::sqrt(2.0 * kPi);
        } else {
            for (std::size_t i = 0; i + edge_cells < ne; ++i) {
                double s = (static_cast<double>(i) + 0.5) * h_eta;
                acc += oracle_symbol(s, t, m_order, tau) *
                       std::cyl_bessel_j(0.0, x * s) * s;
            }
            acc *= h_eta;
            acc += edge_refined(G0, [&](double g) {
                return std::cyl_bessel_j(0.0, x * (t - g)) * (t - g);
            });
        }
        theta[p] = acc;
        if ((p & 255u) == 0) deadline.check("spaceside_multiplier_oracle");
    }

    auto theta_at = [&](double s) -> cplx {
        double q = s / x_step - 0.5;
        if (q <= 0) return theta.front();
        auto i0 = static_cast<std::size_t>(q);
        if (i0 + 1 >= nx) return theta.back();
        double w = q - static_cast<double>(i0);
        return theta[i0] * (1.0 - w) + theta[i0 + 1] * w;
    };

    // forward transform of Theta * psi_j at xi, by direct quadrature
    if (dims == 1) {
        cplx acc = 0;
        for (std::size_t p = 0; p < nx; ++p) {
            double s = theta_axis[p];
            double w = fam.psi_j(j, s);
            if (w == 0.0) continue;
            acc += theta[p] * w * std::cos(s * xi[0]);
        }
        return acc * 2.0 * x_step / std::sqrt(2.0 * kPi);
    }

    double x_lo = fam.inner() * std::ldexp(1.0, j - 1);
    cplx acc = 0;
    for (std::size_t px = 0; px < nx; ++px) {
        double xv = theta_axis[px];
        if (xv > x_hi) break;
        for (std::size_t py = 0; py < nx; ++py) {
            double yv = theta_axis[py];
            double s = std::sqrt(xv * xv + yv * yv);
            if (s <= x_lo || s >= x_hi) continue;
            double w = fam.psi_j(j, s);
            if (w == 0.0) continue;
            cplx val = theta_at(s) * w;
            // sum over the four sign quadrants (kernel is even per axis)
            double c0 = std::cos(xv * xi[0]), c1 = std::cos(yv * xi[1]);
            acc += val * (4.0 * c0 * c1);
        }
        deadline.check("spaceside_multiplier_oracle");
    }
    return acc * (x_step * x_step) / (2.0 * kPi);
}

}  // namespace specloc
