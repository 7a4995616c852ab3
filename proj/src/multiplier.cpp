#include "specloc/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "specloc/fitting.hpp"
#include "specloc/parallel.hpp"
#include "specloc/symbol.hpp"

namespace specloc {

MultiplierContext::MultiplierContext(CutoffFamily f, RadialTable tab, double step)
    : fam(f), table(std::move(tab)), quad_step(step > 0 ? step : table.step) {
    if (!(quad_step > 0))
        throw std::invalid_argument("MultiplierContext: quad_step must be positive");
    if (table.dims == 3) {
        // trapezoid prefix P(q) = int_0^{q*step} rho * psihat(rho) d rho
        prefix.resize(table.values.size());
        double acc = 0;
        prefix[0] = 0;
        for (std::size_t q = 1; q < table.values.size(); ++q) {
            double r0 = table.step * static_cast<double>(q - 1);
            double r1 = table.step * static_cast<double>(q);
            acc += 0.5 * (r0 * table.values[q - 1] + r1 * table.values[q]) * table.step;
            prefix[q] = acc;
        }
    }
}

int MultiplierContext::max_j() const {
    int j = 0;
    while (std::ldexp(quad_step, j + 1) <= 1.0 / kMinSamplesPerUnit) ++j;
    return j;
}

namespace {

void check_resolution(const MultiplierContext& ctx, int j, double t,
                      double xi_radius) {
    if (j < 1) throw std::invalid_argument("localized_multiplier: j must be >= 1");
    if (!(t > 0)) throw std::invalid_argument("localized_multiplier: t must be positive");
    if (xi_radius < 0) throw std::invalid_argument("localized_multiplier: xi_radius < 0");
    double per_unit = 1.0 / std::ldexp(ctx.quad_step, j);
    if (per_unit < kMinSamplesPerUnit) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "localized_multiplier: quadrature step %.3g gives %.1f samples "
                      "per unit of dist*2^%d (need >= %.0f); use a finer table",
                      ctx.quad_step, per_unit, j, kMinSamplesPerUnit);
        throw std::invalid_argument(msg);
    }
    double reach = std::ldexp(xi_radius + t, j);
    if (reach > ctx.table.rho_max()) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "localized_multiplier: needs psihat out to rho=%.3g but the "
                      "table ends at %.3g",
                      reach, ctx.table.rho_max());
        throw std::invalid_argument(msg);
    }
}

// interpolated prefix integral int_0^w rho*psihat(rho) d rho (dims == 3)
double prefix_at(const MultiplierContext& ctx, double w) {
    w = std::abs(w);
    double q = w / ctx.table.step;
    auto i0 = static_cast<std::size_t>(q);
    if (i0 + 1 >= ctx.prefix.size()) return ctx.prefix.back();
    double frac = q - static_cast<double>(i0);
    return ctx.prefix[i0] * (1.0 - frac) + ctx.prefix[i0 + 1] * frac;
}

}  // namespace

cplx localized_multiplier(const MultiplierContext& ctx, int j, double tau,
                          int m_order, double t, double xi_radius) {
    check_resolution(ctx, j, t, xi_radius);
    if (m_order < 1) throw std::invalid_argument("localized_multiplier: m_order < 1");
    const double q = ctx.quad_step;
    const int N = ctx.dims();
    const double xi = xi_radius;

    auto symbol_at = [&](double s) -> cplx {
        double ratio = s / t;
        double u = pow_int(ratio * ratio, m_order);
        if (u >= 1.0) return 0.0;
        if (tau == 0.0) return 1.0;
        return std::polar(1.0, tau * std::log1p(-u));
    };

    // The symbol's phase tau * log(1 - (|eta|/t)^{2m}) rotates without bound
    // toward the sphere, so uniform lattice cells near the edge cannot track
    // it.  The edge strip g = t - |eta| in (0, W] is therefore integrated on a
    // log-graded grid in g (exact symbol at the nodes, trapezoid in log g)
    // with the analytic leading-order remainder below the smallest node:
    //   int_0^e sigma dg ~ (2m/t)^{i tau} e^{1+i tau} / (1 + i tau).
    // Nodes stay fixed in t between lattice crossings, so radius differences
    // remain smooth.
    auto strip_integral = [&](double W, auto f_of_g) -> cplx {
        if (W <= 0) return cplx(0);
        const double gmin = W * 1e-7;
        int M = 512 + 128 * static_cast<int>(std::ceil(std::abs(tau)));
        double dv = std::log(W / gmin) / M;
        cplx acc = 0;
        for (int k = 0; k <= M; ++k) {
            double g = gmin * std::exp(dv * k);
            cplx h = symbol_at(t - g) * f_of_g(g) * g;  // dg = g dv
            acc += (k == 0 || k == M) ? 0.5 * h : h;
        }
        acc *= dv;
        cplx tail = tau == 0.0
                        ? cplx(gmin)
                        : std::polar(gmin, tau * std::log(2.0 * m_order * gmin / t)) /
                              cplx(1.0, tau);
        return acc + tail * f_of_g(0.0);
    };

    cplx acc = 0;
    if (N == 1) {
        auto edge = static_cast<long long>(std::floor(t / q));
        if (static_cast<double>(edge) * q >= t) --edge;
        long long strip_cells =
            16 * (1 + static_cast<long long>(std::ceil(std::abs(tau))));
        long long kmax = edge - std::min<long long>(edge, strip_cells);
        double W = t - static_cast<double>(kmax) * q;
        auto f_both = [&](double g) {
            double s = t - g;
            return ctx.table.value_j(j, xi - s) + ctx.table.value_j(j, xi + s);
        };
        if (kmax < 1) return strip_integral(t, f_both) / std::sqrt(2.0 * kPi);
        for (long long k = -kmax; k <= kmax; ++k) {
            double eta = static_cast<double>(k) * q;
            cplx f = symbol_at(std::abs(eta)) * ctx.table.value_j(j, xi - eta);
            acc += (k == -kmax || k == kmax) ? 0.5 * f : f;
        }
        acc *= q;
        acc += strip_integral(W, [&](double g) {
            return ctx.table.value_j(j, xi - (t - g));
        });
        acc += strip_integral(W, [&](double g) {
            return ctx.table.value_j(j, xi + (t - g));
        });
        acc /= std::sqrt(2.0 * kPi);
    } else if (N == 2) {
        auto ring_avg = [&](double s) {
            if (s <= 0) return 0.0;
            int M = static_cast<int>(std::ceil(
                64.0 * std::ldexp(std::sqrt(xi * s + 1.0), j)));
            M = std::clamp(M, 256, 65536);
            double ring = 0;
            double dtheta = kPi / M;
            for (int p = 0; p < M; ++p) {
                double theta = (p + 0.5) * dtheta;
                double chord = std::sqrt(std::max(
                    0.0, xi * xi + s * s - 2.0 * xi * s * std::cos(theta)));
                ring += ctx.table.value_j(j, chord);
            }
            return 2.0 * ring * dtheta;  // integral over [0, 2 pi)
        };
        auto cells = static_cast<long long>(std::floor(t / q));
        long long strip_cells =
            16 * (1 + static_cast<long long>(std::ceil(std::abs(tau))));
        long long used = cells - std::min<long long>(cells, strip_cells);
        double W = t - static_cast<double>(used) * q;
        for (long long i = 0; i < used; ++i) {
            double s = (static_cast<double>(i) + 0.5) * q;
            acc += symbol_at(s) * ring_avg(s) * s * q;
        }
        acc += strip_integral(W, [&](double g) {
            double s = t - g;
            return ring_avg(s) * s;
        });
        acc /= 2.0 * kPi;
    } else {
        const double scale = std::ldexp(1.0, j);  // 2^j
        auto shell_at = [&](double s) {
            if (s <= 0) return 0.0;
            if (xi < 1e-12) return 4.0 * kPi * s * s * ctx.table.value_j(j, s);
            double dP = prefix_at(ctx, scale * (xi + s)) -
                        prefix_at(ctx, scale * std::abs(xi - s));
            return 2.0 * kPi * (s / xi) * scale * dP;
        };
        auto cells = static_cast<long long>(std::floor(t / q));
        long long strip_cells =
            16 * (1 + static_cast<long long>(std::ceil(std::abs(tau))));
        long long used = cells - std::min<long long>(cells, strip_cells);
        double W = t - static_cast<double>(used) * q;
        for (long long i = 0; i < used; ++i) {
            double s = (static_cast<double>(i) + 0.5) * q;
            acc += symbol_at(s) * shell_at(s) * q;
        }
        acc += strip_integral(W, [&](double g) { return shell_at(t - g); });
        acc /= std::pow(2.0 * kPi, 1.5);
    }
    return acc;
}

TailBound tail_bound_check(const MultiplierContext& ctx, int j, double t,
                           double xi_radius) {
    double u = std::ldexp(std::abs(xi_radius - t), j);
    TailBound tb;
    tb.u = u;
    tb.lhs = std::abs(localized_multiplier(ctx, j, 0.0, 1, t, xi_radius));
    tb.rhs = ctx.table.abs_tail_integral(u);
    return tb;
}

DecayFit envelope_decay_fit(const MultiplierContext& ctx, int j, double tau,
                            int m_order, const EnvelopeSweep& sweep) {
    if (sweep.t_values.empty())
        throw std::invalid_argument("envelope_decay_fit: no t values");
    if (!(sweep.u_max >= sweep.fit_hi))
        throw std::invalid_argument("envelope_decay_fit: sweep range below the fit window");
    if (sweep.bins < 12)
        throw std::invalid_argument("envelope_decay_fit: need >= 12 envelope bins");

    // sample grid in dist*2^j: linear through the near zone, log to u_max
    std::vector<double> ugrid;
    for (int i = 0; i < sweep.linear_points; ++i)
        ugrid.push_back(10.0 * i / (sweep.linear_points - 1));
    double llo = std::log(10.0), lhi = std::log(sweep.u_max);
    for (int i = 1; i <= sweep.log_points; ++i)
        ugrid.push_back(std::exp(llo + (lhi - llo) * i / sweep.log_points));

    struct Job {
        double t, xi, u;
    };
    std::vector<Job> jobs;
    for (double t : sweep.t_values)
        for (double uu : ugrid)
            for (int sgn : {+1, -1}) {
                double dist = uu / std::ldexp(1.0, j);
                double xi = t + sgn * dist;
                if (xi < 0) continue;
                jobs.push_back({t, xi, 1.0 + uu});
            }

    std::vector<double> abscissa(jobs.size()), value(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t a, std::size_t b) {
        for (std::size_t i = a; i < b; ++i) {
            abscissa[i] = jobs[i].u;
            value[i] = std::abs(
                localized_multiplier(ctx, j, tau, m_order, jobs[i].t, jobs[i].xi));
        }
    });

    DecayFit fit;
    fit.j = j;
    fit.tau = tau;
    fit.m_order = m_order;
    for (std::size_t i = 0; i < jobs.size(); ++i)
        if (abscissa[i] <= 2.0) fit.fitted_c = std::max(fit.fitted_c, value[i]);

    auto env = bin_envelope(abscissa, value, sweep.fit_lo, sweep.fit_hi, sweep.bins);
    if (static_cast<int>(env.size()) < 12)
        throw std::runtime_error("envelope_decay_fit: insufficient sweep coverage in the fit window");
    LogLogFit line = fit_loglog(env);
    fit.fitted_n = -line.slope;
    fit.residual = line.max_residual;
    fit.range_lo = sweep.fit_lo;
    fit.range_hi = sweep.fit_hi;
    fit.points = line.points;
    return fit;
}

RadiusDerivative radius_derivative_check(const MultiplierContext& ctx, int j,
                                         double tau, int m_order, double t,
                                         double xi_radius, double dt,
                                         double epsilon0, double n) {
    if (!(t > 1.0))
        throw std::invalid_argument("radius_derivative_check: requires t > 1");
    if (!(dt > 0) || dt >= 0.5 * t)
        throw std::invalid_argument("radius_derivative_check: bad dt");
    if (!(epsilon0 > 0) || epsilon0 > 1.0)
        throw std::invalid_argument("radius_derivative_check: epsilon0 must lie in (0, 1]");

    auto diff = [&](double step) {
        cplx hi = localized_multiplier(ctx, j, tau, m_order, t + step, xi_radius);
        cplx lo = localized_multiplier(ctx, j, tau, m_order, t - step, xi_radius);
        return std::abs(hi - lo) / (2.0 * step);
    };
    double full = diff(dt);
    double half = diff(0.5 * dt);
    double scale = std::max(half, 1e-300);
    if (std::abs(full - half) > 0.01 * scale)
        throw std::runtime_error(
            "radius_derivative_check: finite difference not converged at this dt "
            "(halving changes it by > 1%); decrease dt");

    RadiusDerivative rd;
    rd.u = std::ldexp(std::abs(xi_radius - t), j);
    rd.lhs = half;
    rd.dt = 0.5 * dt;
    rd.rhs_shape = std::ldexp(1.0, j) / std::pow(1.0 + epsilon0 * rd.u, n);
    return rd;
}

double fit_epsilon0(std::span<const std::pair<double, double>> u_and_lhs,
                    double n, int j) {
    if (u_and_lhs.size() < 2)
        throw std::invalid_argument("fit_epsilon0: need >= 2 samples");
    double best_eps = 1.0, best_dev = 1e300;
    for (int step = 1; step <= 50; ++step) {
        double eps = 0.02 * step;
        double rmin = 1e300, rmax = -1e300;
        bool ok = true;
        for (const auto& [u, lhs] : u_and_lhs) {
            if (!(lhs > 0)) { ok = false; break; }
            double r = std::log10(lhs) -
                       std::log10(std::ldexp(1.0, j) / std::pow(1.0 + eps * u, n));
            rmin = std::min(rmin, r);
            rmax = std::max(rmax, r);
        }
        if (!ok) continue;
        double dev = 0.5 * (rmax - rmin);
        if (dev < best_dev) {
            best_dev = dev;
            best_eps = eps;
        }
    }
    return best_eps;
}

MultiplierSample sample_multiplier(const MultiplierContext& ctx, int j,
                                   double tau, int m_order,
                                   std::vector<double> t_values,
                                   std::vector<double> xi_radii) {
    if (t_values.empty() || xi_radii.empty())
        throw std::invalid_argument("sample_multiplier: empty axes");
    std::sort(t_values.begin(), t_values.end());
    std::sort(xi_radii.begin(), xi_radii.end());
    if (!(t_values.front() > 0))
        throw std::invalid_argument("sample_multiplier: t values must be positive");
    if (xi_radii.front() < 0)
        throw std::invalid_argument("sample_multiplier: xi radii must be nonnegative");

    MultiplierSample ms{j, tau, m_order, std::move(t_values), std::move(xi_radii), {}};
    ms.values.resize(ms.t_values.size() * ms.xi_radii.size());
    parallel_for(ms.values.size(), [&](std::size_t a, std::size_t b) {
        for (std::size_t i = a; i < b; ++i) {
            std::size_t ti = i / ms.xi_radii.size();
            std::size_t xr = i % ms.xi_radii.size();
            ms.values[i] = localized_multiplier(ctx, j, tau, m_order,
                                                ms.t_values[ti], ms.xi_radii[xr]);
        }
    });
    return ms;
}

void MultiplierSample::export_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("MultiplierSample::export_csv: cannot open " + path);
    out << "j,tau,t,xi_radius,re,im\n";
    char buf[160];
    for (std::size_t ti = 0; ti < t_values.size(); ++ti)
        for (std::size_t xr = 0; xr < xi_radii.size(); ++xr) {
            const cplx& z = values[ti * xi_radii.size() + xr];
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", j,
                          tau, t_values[ti], xi_radii[xr], z.real(), z.imag());
            out << buf;
        }
}

void export_decay_fits_csv(std::span<const DecayFit> fits, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_decay_fits_csv: cannot open " + path);
    out << "j,tau,C,n,residual\n";
    char buf[160];
    for (const DecayFit& f : fits) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", f.j, f.tau,
                      f.fitted_c, f.fitted_n, f.residual);
        out << buf;
    }
}

}  // namespace specloc
