#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "specloc/multiplier.hpp"
#include "specloc/oracles.hpp"

using namespace specloc;

namespace {

const CutoffFamily& family() {
    static CutoffFamily fam(1.0);
    return fam;
}

const RadialTable& table_1d() {
    static RadialTable tab = [] {
        RadialTableParams tp;
        tp.rho_max = 1300.0;
        return tabulate_psi_hat(family(), 1, tp);
    }();
    return tab;
}

const MultiplierContext& ctx_1d() {
    static MultiplierContext ctx(family(), table_1d());
    return ctx;
}

}  // namespace

TEST_CASE("resolution and range guards") {
    const MultiplierContext& ctx = ctx_1d();
    CHECK(ctx.max_j() >= 3);
    CHECK_THROWS_WITH_AS(
        (void)localized_multiplier(ctx, ctx.max_j() + 1, 0.0, 1, 2.0, 2.0),
        doctest::Contains("samples"), std::invalid_argument);
    // beyond the table range
    CHECK_THROWS_WITH_AS((void)localized_multiplier(ctx, 3, 0.0, 1, 50.0, 200.0),
                         doctest::Contains("table"), std::invalid_argument);
    CHECK_THROWS_AS((void)localized_multiplier(ctx, 1, 0.0, 0, 2.0, 2.0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)localized_multiplier(ctx, 1, 0.0, 1, -2.0, 2.0),
                    std::invalid_argument);
}

TEST_CASE("t -> 0 kills the multiplier; huge t drives it to psi_j(0) = 0") {
    const MultiplierContext& ctx = ctx_1d();
    // tiny ball: mass shrinks linearly with t
    cplx small = localized_multiplier(ctx, 2, 0.0, 1, 0.02, 1.0);
    CHECK(std::abs(small) <= 3e-2);
    cplx smaller = localized_multiplier(ctx, 2, 0.0, 1, 0.002, 1.0);
    CHECK(std::abs(smaller) <= 0.2 * std::abs(small));
    // huge ball: the convolution integrates nearly all of psi-hat_j, whose
    // total integral is psi_j(0) = 0
    cplx big = localized_multiplier(ctx, 2, 0.0, 1, 120.0, 1.0);
    CHECK(std::abs(big) <= 2e-4);
}

TEST_CASE("cross-path agreement with the spatial-side oracle (1-d)") {
    // fine quadrature on both routes; the paths share no arithmetic
    MultiplierContext ctx(family(), table_1d(), 2e-4);
    SpacesideParams sp;
    sp.eta_step = 1e-4;
    sp.x_step = 5e-4;
    OracleBudget budget{std::size_t{1} << 24, 300.0};
    for (double tau : {0.0, 1.0})
        for (double xi : {1.4, 2.0, 2.9}) {
            double t = 2.0;
            cplx fast = localized_multiplier(ctx, 2, tau, 1, t, xi);
            double xiv[] = {xi};
            cplx slow = spaceside_multiplier_oracle(
                family(), 1, 2, tau, 1, t, std::span<const double>(xiv, 1), sp,
                budget);
            CHECK(std::abs(fast - slow) <= 1e-6);
        }
}

TEST_CASE("tail bound: on-sphere region is everything; inequality holds; rhs recedes") {
    const MultiplierContext& ctx = ctx_1d();
    TailBound on = tail_bound_check(ctx, 2, 2.0, 2.0);
    CHECK(on.u == 0.0);
    CHECK(on.rhs == doctest::Approx(ctx.table.abs_tail_integral(0.0)));
    CHECK(on.lhs <= on.rhs * (1 + 1e-3));

    for (double t : {0.5, 1.0, 2.0, 4.0})
        for (double uu : {0.0, 1.0, 5.0, 20.0, 60.0})
            for (int sgn : {1, -1})
                for (int j : {1, 2, 3}) {
                    double xi = t + sgn * uu / std::ldexp(1.0, j);
                    if (xi < 0) continue;
                    TailBound tb = tail_bound_check(ctx, j, t, xi);
                    REQUIRE(tb.lhs <= tb.rhs * (1 + 1e-3));
                }

    // region recedes with j at fixed dist
    double dist = 1.5;
    double prev = 1e300;
    for (int j : {1, 2, 3}) {
        TailBound tb = tail_bound_check(ctx, j, 2.0, 2.0 + dist);
        CHECK(tb.rhs <= prev);
        prev = tb.rhs;
    }
}

TEST_CASE("tau = 0 lhs path equals the plain multiplier bit for bit") {
    const MultiplierContext& ctx = ctx_1d();
    for (double xi : {1.0, 2.5, 4.0}) {
        TailBound tb = tail_bound_check(ctx, 2, 2.0, xi);
        CHECK(tb.lhs == std::abs(localized_multiplier(ctx, 2, 0.0, 1, 2.0, xi)));
    }
}

TEST_CASE("envelope decay fit: exponent at least 4 at every (j, tau)") {
    const MultiplierContext& ctx = ctx_1d();
    EnvelopeSweep sweep;
    sweep.log_points = 80;  // lighter sweep for the unit suite
    std::vector<DecayFit> fits;
    for (int j : {1, 2, 3})
        for (double tau : {0.0, 1.0, 5.0}) {
            DecayFit fit = envelope_decay_fit(ctx, j, tau, 1, sweep);
            CHECK(fit.fitted_n >= 4.0);
            CHECK(fit.fitted_c > 0.0);
            CHECK(fit.points >= 12);
            CHECK(fit.range_hi >= 100.0 * fit.range_lo);  // two decades
            fits.push_back(fit);
        }

    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "specloc_fit_csv";
    fs::create_directories(dir);
    export_decay_fits_csv(fits, (dir / "fits.csv").string());
    std::ifstream in(dir / "fits.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "j,tau,C,n,residual");
    fs::remove_all(dir);
}

TEST_CASE("envelope sweep validation") {
    const MultiplierContext& ctx = ctx_1d();
    EnvelopeSweep bad;
    bad.u_max = 100.0;  // below the fit window
    CHECK_THROWS_AS((void)envelope_decay_fit(ctx, 1, 0.0, 1, bad), std::invalid_argument);
    EnvelopeSweep few;
    few.bins = 4;
    CHECK_THROWS_AS((void)envelope_decay_fit(ctx, 1, 0.0, 1, few), std::invalid_argument);
}

TEST_CASE("radius derivative: locality for tau = 0 away from the sphere") {
    // the indicator symbol changes the quadrature only when eta nodes cross
    // the sphere, so the difference step spans a few node cells to capture the
    // staircase's average slope near the sphere; far away the crossing nodes
    // carry negligible psi-hat weight
    const MultiplierContext& ctx = ctx_1d();
    double q = ctx.quad_step;
    double t = (std::round(4.0 / q - 0.5) + 0.5) * q;
    double dt = 2.0 * q;
    auto diff = [&](double xi) {
        cplx hi = localized_multiplier(ctx, 1, 0.0, 1, t + dt, xi);
        cplx lo = localized_multiplier(ctx, 1, 0.0, 1, t - dt, xi);
        return std::abs(hi - lo) / (2 * dt);
    };
    double near_peak = diff(t + 0.25);
    CHECK(near_peak > 0.0);
    CHECK(diff(t + 200.0) <= 1e-6 * near_peak);
}

TEST_CASE("radius derivative: 2^j scaling and dt convergence control") {
    CHECK_THROWS_AS((void)radius_derivative_check(ctx_1d(), 1, 1.0, 1, 0.5, 1.0,
                                                  1e-4, 1.0, 5.0),
                    std::invalid_argument);  // t must exceed 1
    CHECK_THROWS_AS((void)radius_derivative_check(ctx_1d(), 1, 1.0, 1, 16.0, 17.0,
                                                  1e-4, 1.5, 5.0),
                    std::invalid_argument);  // epsilon0 out of (0, 1]

    for (double tau : {1.0, 5.0})
        for (double uu : {4.0, 16.0}) {
            double prev = 0;
            for (int j : {1, 2, 3}) {
                MultiplierContext jctx(family(), table_1d(),
                                       std::ldexp(1.0, -j) / 32.0);
                double d = jctx.quad_step;
                double t = (std::round(16.0 / d - 0.5) + 0.5) * d;
                double dt = 2.5e-2 * d / std::max(1.0, tau / 4.0);
                double best = 0;
                for (double fac : {0.9, 0.95, 1.0, 1.05, 1.1}) {
                    RadiusDerivative rd = radius_derivative_check(
                        jctx, j, tau, 1, t, t + uu * fac / std::ldexp(1.0, j), dt,
                        1.0, 5.0);
                    best = std::max(best, rd.lhs);
                    CHECK(rd.rhs_shape > 0.0);
                }
                if (prev > 0) {
                    double ratio = best / prev;
                    CHECK(ratio >= 1.6);
                    CHECK(ratio <= 2.4);
                }
                prev = best;
            }
        }

    // a dt comparable to the multiplier's own t-scale cannot converge
    MultiplierContext jctx(family(), table_1d(), 0.5 / 32.0);
    double d = jctx.quad_step;
    double t = (std::round(16.0 / d - 0.5) + 0.5) * d;
    CHECK_THROWS_AS((void)radius_derivative_check(jctx, 1, 5.0, 1, t, t + 2.0,
                                                  0.3, 1.0, 5.0),
                    std::runtime_error);
}

TEST_CASE("epsilon0 fit stays in (0, 1] and fits synthetic data") {
    // synthesize lhs = 2^j / (1 + 0.5 u)^n samples and recover epsilon0
    double n = 5.0;
    int j = 2;
    std::vector<std::pair<double, double>> samples;
    for (double u : {2.0, 5.0, 10.0, 30.0, 100.0})
        samples.push_back({u, std::ldexp(1.0, j) / std::pow(1.0 + 0.5 * u, n)});
    double eps = fit_epsilon0(samples, n, j);
    CHECK(eps == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("sample matrix export") {
    const MultiplierContext& ctx = ctx_1d();
    MultiplierSample ms = sample_multiplier(ctx, 2, 1.0, 1, {2.0, 1.0}, {0.5, 1.5, 2.5});
    CHECK(ms.t_values.front() == 1.0);  // sorted
    CHECK(ms.values.size() == 6);

    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "specloc_sample_csv";
    fs::create_directories(dir);
    ms.export_csv((dir / "samples.csv").string());
    std::ifstream in(dir / "samples.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "j,tau,t,xi_radius,re,im");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 6);
    fs::remove_all(dir);
}

TEST_CASE("2-d lab: radiality of the oracle and cross-path agreement") {
    CutoffFamily fam = family();
    RadialTableParams tp;
    tp.step = 1.0 / 128.0;
    tp.rho_max = 64.0;
    tp.quad_step = 5e-4;
    MultiplierContext ctx2(fam, tabulate_psi_hat(fam, 2, tp), 1.0 / 512.0);

    double t = 2.0, xi_norm = 2.8;
    int j = 1;
    SpacesideParams sp;
    sp.x_step = 0.001;
    sp.eta_step = 1e-4;
    OracleBudget budget{std::size_t{1} << 24, 300.0};
    double axis[] = {xi_norm, 0.0};
    double diag[] = {xi_norm / std::sqrt(2.0), xi_norm / std::sqrt(2.0)};
    cplx va = spaceside_multiplier_oracle(fam, 2, j, 0.0, 1, t,
                                          std::span<const double>(axis, 2), sp, budget);
    cplx vd = spaceside_multiplier_oracle(fam, 2, j, 0.0, 1, t,
                                          std::span<const double>(diag, 2), sp, budget);
    CHECK(std::abs(va - vd) <= 1e-8);

    cplx fast = localized_multiplier(ctx2, j, 0.0, 1, t, xi_norm);
    CHECK(std::abs(fast - va) <= 1e-6);
}

TEST_CASE("2-d tail bound holds across a small sweep") {
    CutoffFamily fam = family();
    RadialTableParams tp;
    tp.step = 1.0 / 32.0;
    tp.rho_max = 96.0;
    tp.quad_step = 5e-4;
    MultiplierContext ctx2(fam, tabulate_psi_hat(fam, 2, tp));
    for (double t : {1.0, 2.0})
        for (double uu : {0.0, 2.0, 8.0})
            for (int sgn : {1, -1}) {
                double xi = t + sgn * uu / 2.0;
                if (xi < 0) continue;
                TailBound tb = tail_bound_check(ctx2, 1, t, xi);
                CHECK(tb.lhs <= tb.rhs * (1 + 1e-3));
            }
}
