#include "specloc/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <vector>

#include "specloc/config.hpp"
#include "specloc/csv.hpp"
#include "specloc/experiments.hpp"
#include "specloc/expansion.hpp"
#include "specloc/multiplier.hpp"
#include "specloc/oracles.hpp"
#include "specloc/pgm.hpp"
#include "specloc/transform.hpp"

namespace specloc {

namespace fs = std::filesystem;

namespace {

struct Failure {
    std::string metric;
    std::string detail;
};

// Collects rows/artifacts in memory; nothing touches the disk until commit().
struct RunContext {
    ExperimentConfig cfg;
    fs::path out_dir;
    std::vector<std::pair<fs::path, CsvBuffer>> csvs;
    std::vector<std::string> manifest_notes;
    std::vector<Failure> failures;

    void fail(const std::string& metric, const std::string& detail) {
        failures.push_back({metric, detail});
    }
    void check(bool ok, const std::string& metric, const std::string& detail) {
        if (!ok) fail(metric, detail);
    }
    void note(std::string line) { manifest_notes.push_back(std::move(line)); }

    void commit(const std::string& subcommand) {
        fs::create_directories(out_dir);
        for (const auto& [path, buf] : csvs) buf.commit(path.string());
        std::ofstream man(out_dir / "manifest.txt", std::ios::binary);
        if (!man) throw std::runtime_error("cannot write manifest.txt");
        man << "# specloc " << kVersion << "\n";
        man << "# subcommand: " << subcommand << "\n";
        for (const std::string& line : manifest_notes) man << "# " << line << "\n";
        man << cfg.canonical();
        if (!man) throw std::runtime_error("manifest write failed");
    }
};

GridSpec grid_from_config(const ExperimentConfig& cfg) {
    return GridSpec(static_cast<int>(cfg.get_int_or("grid.dims", 1)),
                    static_cast<int>(cfg.get_int_or("grid.n", 256)),
                    cfg.get_real_or("grid.L", 16.0));
}

LambdaSchedule schedule_from_config(const ExperimentConfig& cfg,
                                    const GridSpec& grid, int m_order) {
    std::string mode = cfg.get_or("schedule.mode", "exact_breakpoints");
    int refinement = static_cast<int>(cfg.get_int_or("schedule.refinement", 8));
    if (mode == "exact_breakpoints")
        return LambdaSchedule::exact_breakpoints(grid, m_order, refinement);
    if (mode == "geometric") {
        int points = static_cast<int>(cfg.get_int_or("schedule.points", 512));
        double lo = cfg.get_real_or("schedule.lambda_min", 0.25);
        double hi = cfg.get_real_or("schedule.lambda_max",
                                    pow_int(grid.max_freq_norm_sq(), m_order) * 2.0);
        return LambdaSchedule::geometric(lo, hi, points);
    }
    if (mode == "explicit")
        return LambdaSchedule::explicit_list(cfg.get_real_list("schedule.values"),
                                             refinement);
    throw config_error("schedule.mode must be exact_breakpoints, geometric or explicit");
}

TestFunctionSpec function_from_config(const ExperimentConfig& cfg) {
    TestFunctionSpec spec;
    spec.kind = test_function_kind_from_name(cfg.get_or("function.kind", "gaussian_shell"));
    spec.inner_radius = cfg.get_real_or("function.inner_radius", 3.0);
    spec.outer_radius = cfg.get_real_or("function.outer_radius", 7.0);
    spec.amplitude = cfg.get_real_or("function.amplitude", 1.0);
    spec.center_radius = cfg.get_real_or("function.center_radius", 4.0);
    spec.width = cfg.get_real_or("function.width", 0.3);
    spec.ramp = cfg.get_real_or("function.ramp", 0.5);
    spec.band_limit = cfg.get_real_or("function.band_limit", 10.0);
    spec.mass = cfg.get_real_or("function.mass", 0.0);
    spec.seed = static_cast<unsigned long long>(cfg.get_int_or("function.seed", 1));
    return spec;
}

const std::vector<std::string> kCommonKeys = {
    "output.dir", "output.heatmap", "output.slice_axis", "output.slice_index",
};

std::vector<std::string> with_common(std::vector<std::string> keys) {
    keys.insert(keys.end(), kCommonKeys.begin(), kCommonKeys.end());
    return keys;
}

// ---------------------------------------------------------------- transform

void run_transform_check(RunContext& rc) {
    rc.cfg.validate_keys(
        with_common({"grid.dims", "grid.n", "grid.L", "check.trials",
                     "function.seed"}),
        {});
    GridSpec grid = grid_from_config(rc.cfg);
    int trials = static_cast<int>(rc.cfg.get_int_or("check.trials", 20));
    auto seed = static_cast<unsigned long long>(rc.cfg.get_int_or("function.seed", 1));

    CsvBuffer csv("check,metric,value,threshold,pass");
    std::mt19937_64 rng(seed);
    auto uniform = [&]() { return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53 - 0.5; };
    auto random_field = [&](const GridSpec& g) {
        std::vector<cplx> v(g.point_count());
        for (cplx& z : v) z = cplx(uniform(), uniform());
        return SpatialField(g, std::move(v));
    };
    auto record = [&](const std::string& check, const std::string& metric,
                      double value, double threshold) {
        bool ok = value <= threshold;
        csv.add_row(check + "," + metric + "," + fmt_g17(value) + "," +
                    fmt_g17(threshold) + "," + (ok ? "1" : "0"));
        rc.check(ok, check + "." + metric,
                 "value " + fmt_g17(value) + " exceeds " + fmt_g17(threshold));
    };

    double worst_parseval = 0, worst_roundtrip = 0;
    for (int tr = 0; tr < trials; ++tr) {
        SpatialField f = random_field(grid);
        SpectralField F = forward_transform(f);
        double nf = l2_norm(f), nF = l2_norm(F);
        worst_parseval = std::max(worst_parseval, std::abs(nf - nF) / nf);
        SpatialField back = inverse_transform(F);
        double err = 0, ref = 0;
        for (std::size_t i = 0; i < f.samples.size(); ++i) {
            err += std::norm(back.samples[i] - f.samples[i]);
            ref += std::norm(f.samples[i]);
        }
        worst_roundtrip = std::max(worst_roundtrip, std::sqrt(err / ref));
    }
    record("parseval", "max_rel_error", worst_parseval, 1e-10);
    record("roundtrip", "max_rel_error", worst_roundtrip, 1e-10);

    // brute-force cross-check on an oracle-sized grid
    GridSpec small(grid.dims, std::min(grid.n, grid.dims == 1 ? 64 : 16), grid.extent);
    SpatialField fs = random_field(small);
    SpectralField fast = forward_transform(fs);
    SpectralField slow = direct_transform_reference(fs);
    double err = 0, ref = 0;
    for (std::size_t i = 0; i < fast.coeffs.size(); ++i) {
        err += std::norm(fast.coeffs[i] - slow.coeffs[i]);
        ref += std::norm(slow.coeffs[i]);
    }
    record("direct_oracle", "rel_l2_error", std::sqrt(err / ref), 1e-8);

    // closed-form gaussian on the 1-d demo grid
    GridSpec gg(1, 256, 20.0);
    std::vector<cplx> gv(gg.point_count());
    for (std::size_t i = 0; i < gv.size(); ++i) {
        double x = gg.coord(static_cast<int>(i));
        gv[i] = std::exp(-0.5 * x * x);
    }
    SpectralField G = forward_transform(SpatialField(gg, std::move(gv)));
    double worst_gauss = 0;
    for (std::size_t i = 0; i < G.coeffs.size(); ++i) {
        double xi = gg.freq(static_cast<int>(i));
        if (std::abs(xi) > 4.0) continue;
        double expect = std::exp(-0.5 * xi * xi);
        worst_gauss = std::max(worst_gauss, std::abs(G.coeffs[i] - expect) / expect);
    }
    record("gaussian_closed_form", "max_rel_error_central_band", worst_gauss, 1e-6);

    rc.csvs.emplace_back(rc.out_dir / "transform-check.csv", std::move(csv));
    rc.note("seed: " + std::to_string(seed));
}

// ---------------------------------------------------------------- partition

void run_partition_check(RunContext& rc) {
    rc.cfg.validate_keys(
        with_common({"cutoff.r", "cutoff.profile", "check.samples", "check.jmax",
                     "function.seed"}),
        {});
    CutoffFamily fam(rc.cfg.get_real_or("cutoff.r", 1.0),
                     transition_profile_from_name(
                         rc.cfg.get_or("cutoff.profile", "smooth_exp_step")));
    int samples = static_cast<int>(rc.cfg.get_int_or("check.samples", 10000));
    int jmax = static_cast<int>(rc.cfg.get_int_or("check.jmax", 20));
    auto seed = static_cast<unsigned long long>(rc.cfg.get_int_or("function.seed", 1));

    std::mt19937_64 rng(seed);
    auto uniform = [&]() { return static_cast<double>(rng() >> 11) * 0x1p-53; };

    CsvBuffer csv("J,max_abs_residual");
    for (int J = 1; J <= jmax; ++J) {
        double worst = 0;
        for (int s = 0; s < samples / jmax + 1; ++s) {
            double x = 100.0 * uniform();
            worst = std::max(worst, std::abs(fam.partition_residual(x, J)));
        }
        csv.add_row(std::to_string(J) + "," + fmt_g17(worst));
        rc.check(worst <= 1e-12, "partition_residual.J" + std::to_string(J),
                 "residual " + fmt_g17(worst));
    }

    // squeeze and support checks (exact inequalities)
    double a = fam.inner(), b = fam.outer();
    for (int i = 0; i <= 4000; ++i) {
        double t = 2.0 * b * i / 4000.0;
        double p = fam.phi(t);
        bool ok = p >= 0.0 && p <= 1.0 && (t > a || p == 1.0) && (t < b || p == 0.0);
        rc.check(ok, "phi.squeeze", "violated at t = " + fmt_g17(t));
        if (!ok) break;
    }
    for (int j = 1; j <= 4; ++j) {
        double in_edge = a * std::ldexp(1.0, j - 1);
        double out_edge = b * std::ldexp(1.0, j);
        rc.check(fam.psi_j(j, in_edge) == 0.0 && fam.psi_j(j, in_edge * 0.5) == 0.0,
                 "psi_j.support_inner", "j = " + std::to_string(j));
        rc.check(fam.psi_j(j, out_edge) == 0.0 && fam.psi_j(j, out_edge * 2.0) == 0.0,
                 "psi_j.support_outer", "j = " + std::to_string(j));
    }

    rc.csvs.emplace_back(rc.out_dir / "partition-check.csv", std::move(csv));
    rc.note("seed: " + std::to_string(seed));
}

// ---------------------------------------------------------------- multiplier

void run_multiplier_audit(RunContext& rc) {
    rc.cfg.validate_keys(
        with_common({"cutoff.r", "cutoff.profile", "multiplier.dims",
                     "multiplier.j_list", "multiplier.tau_list", "multiplier.m",
                     "multiplier.t_list", "multiplier.u_max", "multiplier.fit_lo",
                     "multiplier.fit_hi", "multiplier.bins",
                     "multiplier.table_step", "multiplier.table_rho_max",
                     "multiplier.min_n", "multiplier.max_residual",
                     "multiplier.tail_tol"}),
        {});
    CutoffFamily fam(rc.cfg.get_real_or("cutoff.r", 1.0),
                     transition_profile_from_name(
                         rc.cfg.get_or("cutoff.profile", "smooth_exp_step")));
    int dims = static_cast<int>(rc.cfg.get_int_or("multiplier.dims", 1));
    int m_order = static_cast<int>(rc.cfg.get_int_or("multiplier.m", 1));
    std::vector<long long> j_list = rc.cfg.has("multiplier.j_list")
                                        ? rc.cfg.get_int_list("multiplier.j_list")
                                        : std::vector<long long>{1, 2, 3};
    std::vector<double> tau_list = rc.cfg.has("multiplier.tau_list")
                                       ? rc.cfg.get_real_list("multiplier.tau_list")
                                       : std::vector<double>{0.0, 1.0, 5.0};
    std::vector<double> t_list = rc.cfg.has("multiplier.t_list")
                                     ? rc.cfg.get_real_list("multiplier.t_list")
                                     : std::vector<double>{1.0, 2.0, 4.0};
    double u_max = rc.cfg.get_real_or("multiplier.u_max", 1100.0);
    double fit_lo = rc.cfg.get_real_or("multiplier.fit_lo", 10.0);
    double fit_hi = rc.cfg.get_real_or("multiplier.fit_hi", 1000.0);
    int bins = static_cast<int>(rc.cfg.get_int_or("multiplier.bins", 24));
    double min_n = rc.cfg.get_real_or("multiplier.min_n", 4.0);
    double max_residual = rc.cfg.get_real_or("multiplier.max_residual", 0.0);
    double tail_tol = rc.cfg.get_real_or("multiplier.tail_tol", 1e-3);

    RadialTableParams tp;
    tp.step = rc.cfg.get_real_or("multiplier.table_step", 1.0 / 128.0);
    int maxj = 1;
    for (long long j : j_list) maxj = std::max(maxj, static_cast<int>(j));
    double needed = 0;
    for (double t : t_list) needed = std::max(needed, t);
    double default_rho =
        std::ldexp(2.0 * needed + u_max + u_max / std::ldexp(1.0, maxj), 1);
    tp.rho_max = rc.cfg.get_real_or("multiplier.table_rho_max",
                                    std::max(256.0, default_rho));
    MultiplierContext ctx(fam, tabulate_psi_hat(fam, dims, tp));

    CsvBuffer summary("kind,j,tau,m,t,xi_radius,u,lhs,rhs,fitted_c,fitted_n,residual");
    std::vector<DecayFit> fits;

    // tail bound sweep (tau = 0)
    for (long long j : j_list)
        for (double t : t_list)
            for (double uu : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0})
                for (int sgn : {+1, -1}) {
                    double dist = uu / std::ldexp(1.0, static_cast<int>(j));
                    double xir = t + sgn * dist;
                    if (xir < 0) continue;
                    TailBound tb = tail_bound_check(ctx, static_cast<int>(j), t, xir);
                    summary.add_row("tail_bound," + std::to_string(j) + ",0," +
                                    std::to_string(m_order) + "," + fmt_g17(t) + "," +
                                    fmt_g17(xir) + "," + fmt_g17(tb.u) + "," +
                                    fmt_g17(tb.lhs) + "," + fmt_g17(tb.rhs) + ",,,");
                    rc.check(tb.lhs <= tb.rhs * (1.0 + tail_tol), "tail_bound",
                             "lhs " + fmt_g17(tb.lhs) + " > rhs " + fmt_g17(tb.rhs) +
                                 " at j=" + std::to_string(j) + " t=" + fmt_g17(t) +
                                 " xi=" + fmt_g17(xir));
                }

    // envelope decay fits
    EnvelopeSweep sweep;
    sweep.t_values = t_list;
    sweep.u_max = u_max;
    sweep.fit_lo = fit_lo;
    sweep.fit_hi = fit_hi;
    sweep.bins = bins;
    for (long long j : j_list)
        for (double tau : tau_list) {
            DecayFit fit = envelope_decay_fit(ctx, static_cast<int>(j), tau, m_order, sweep);
            fits.push_back(fit);
            summary.add_row("decay_fit," + std::to_string(j) + "," + fmt_g17(tau) +
                            "," + std::to_string(m_order) + ",,,,," + "," +
                            fmt_g17(fit.fitted_c) + "," + fmt_g17(fit.fitted_n) + "," +
                            fmt_g17(fit.residual));
            rc.check(fit.fitted_n >= min_n, "decay_fit.n",
                     "fitted n " + fmt_g17(fit.fitted_n) + " < " + fmt_g17(min_n) +
                         " at j=" + std::to_string(j) + " tau=" + fmt_g17(tau));
            if (max_residual > 0)
                rc.check(fit.residual <= max_residual, "decay_fit.residual",
                         "residual " + fmt_g17(fit.residual) + " > " +
                             fmt_g17(max_residual));
        }

    // radius-derivative scaling at matched u (tau from the list, skipping 0).
    // Self-similar per-j quadrature steps keep the edge discretization
    // identical across j at matched u, and dt shrinks with tau so the edge
    // nodes' phase swing stays small.
    double t16 = 16.0;
    for (double tau : tau_list) {
        if (tau == 0.0) continue;
        for (double uu : {4.0, 16.0, 64.0}) {
            for (long long j : j_list) {
                int ji = static_cast<int>(j);
                MultiplierContext jctx(fam, ctx.table,
                                       std::ldexp(1.0, -ji) / 32.0);
                double d = jctx.quad_step;
                double tsnap = (std::round(t16 / d - 0.5) + 0.5) * d;
                double xir = tsnap + uu / std::ldexp(1.0, ji);
                double dt = 2.5e-2 * d / std::max(1.0, std::abs(tau) / 4.0);
                RadiusDerivative rd = radius_derivative_check(
                    jctx, ji, tau, m_order, tsnap, xir, dt, 1.0,
                    fits.empty() ? 5.0 : fits.front().fitted_n);
                summary.add_row("radius_derivative," + std::to_string(j) + "," +
                                fmt_g17(tau) + "," + std::to_string(m_order) + "," +
                                fmt_g17(tsnap) + "," + fmt_g17(xir) + "," +
                                fmt_g17(rd.u) + "," + fmt_g17(rd.lhs) + "," +
                                fmt_g17(rd.rhs_shape) + ",,,");
            }
        }
        break;  // one nonzero tau is enough for the CSV sweep
    }

    rc.csvs.emplace_back(rc.out_dir / "multiplier-audit.csv", std::move(summary));

    // evaluated sample matrix for the first configured (j, tau)
    {
        MultiplierSample ms =
            sample_multiplier(ctx, static_cast<int>(j_list.front()),
                              tau_list.front(), m_order, t_list,
                              {0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0});
        CsvBuffer samples("j,tau,t,xi_radius,re,im");
        for (std::size_t ti = 0; ti < ms.t_values.size(); ++ti)
            for (std::size_t xr = 0; xr < ms.xi_radii.size(); ++xr) {
                const cplx& z = ms.values[ti * ms.xi_radii.size() + xr];
                samples.add_row(std::to_string(ms.j) + "," + fmt_g17(ms.tau) + "," +
                                fmt_g17(ms.t_values[ti]) + "," +
                                fmt_g17(ms.xi_radii[xr]) + "," + fmt_g17(z.real()) +
                                "," + fmt_g17(z.imag()));
            }
        rc.csvs.emplace_back(rc.out_dir / "multiplier-samples.csv", std::move(samples));
    }

    if (!fits.empty()) {
        CsvBuffer fitcsv("j,tau,C,n,residual");
        for (const DecayFit& f : fits)
            fitcsv.add_row(std::to_string(f.j) + "," + fmt_g17(f.tau) + "," +
                           fmt_g17(f.fitted_c) + "," + fmt_g17(f.fitted_n) + "," +
                           fmt_g17(f.residual));
        rc.csvs.emplace_back(rc.out_dir / "decay-fits.csv", std::move(fitcsv));
    }
}

// ---------------------------------------------------------------- maximal

void run_maximal_audit(RunContext& rc) {
    rc.cfg.validate_keys(
        with_common({"grid.dims", "grid.n", "grid.L", "symbol.m", "symbol.tau",
                     "schedule.mode", "schedule.points", "schedule.refinement",
                     "schedule.lambda_min", "schedule.lambda_max", "schedule.values",
                     "function.kind", "function.inner_radius", "function.outer_radius",
                     "function.amplitude", "function.center_radius", "function.width",
                     "function.ramp", "function.band_limit", "function.mass",
                     "function.seed", "audit.name", "audit.r", "audit.ladder",
                     "audit.max_stability"}),
        {"audit.r"});
    int m_order = static_cast<int>(rc.cfg.get_int_or("symbol.m", 1));
    double tau = rc.cfg.get_real_or("symbol.tau", 0.0);
    double r = rc.cfg.get_real("audit.r");
    std::string name = rc.cfg.get_or("audit.name", "maximal_audit");
    TestFunctionSpec fspec = function_from_config(rc.cfg);

    std::vector<AuditResult> results;
    if (rc.cfg.has("audit.ladder")) {
        StabilityLadder ladder;
        for (long long n : rc.cfg.get_int_list("audit.ladder"))
            ladder.grid_sizes.push_back(static_cast<int>(n));
        ladder.dims = static_cast<int>(rc.cfg.get_int_or("grid.dims", 1));
        ladder.extent = rc.cfg.get_real_or("grid.L", 16.0);
        ladder.schedule_mode =
            rc.cfg.get_or("schedule.mode", "exact_breakpoints") == "geometric"
                ? LambdaSchedule::Mode::geometric
                : LambdaSchedule::Mode::exact_breakpoints;
        ladder.geometric_points = static_cast<int>(rc.cfg.get_int_or("schedule.points", 512));
        ladder.refinement = static_cast<int>(rc.cfg.get_int_or("schedule.refinement", 8));
        AuditResult res = maximal_inequality_stability({fspec}, r, tau, m_order, ladder);
        res.name = name;
        double max_stab = rc.cfg.get_real_or("audit.max_stability", 1.5);
        rc.check(res.metric("stability") <= max_stab, "stability",
                 "stability " + fmt_g17(res.metric("stability")) + " > " +
                     fmt_g17(max_stab));
        results.push_back(std::move(res));
    } else {
        GridSpec grid = grid_from_config(rc.cfg);
        LambdaSchedule sched = schedule_from_config(rc.cfg, grid, m_order);
        SpatialField f = generate_test_function(fspec, grid);
        AuditResult res = maximal_inequality_audit(f, r, sched, tau, m_order);
        res.name = name;
        rc.check(std::isfinite(res.metric("ratio")), "ratio", "ratio not finite");
        if (rc.cfg.get_bool_or("output.heatmap", false)) {
            fs::create_directories(rc.out_dir);
            MaximalResult mx = maximal_function(f, sched, tau, m_order);
            SliceSpec slice{static_cast<int>(rc.cfg.get_int_or("output.slice_axis", 2)),
                            static_cast<int>(rc.cfg.get_int_or("output.slice_index", -1))};
            HeatmapScale sc =
                emit_heatmap(mx.field, slice, (rc.out_dir / "maximal_field.pgm").string());
            rc.note("maximal_field.pgm scale: lo = " + fmt_g17(sc.lo) +
                    ", hi = " + fmt_g17(sc.hi));
        }
        results.push_back(std::move(res));
    }

    // audit rows share the CSV layout of export_audit_csv
    std::vector<std::string> pkeys, mkeys;
    for (const AuditResult& res : results) {
        for (const auto& [k, v] : res.params)
            if (std::find(pkeys.begin(), pkeys.end(), k) == pkeys.end()) pkeys.push_back(k);
        for (const auto& [k, v] : res.metrics)
            if (std::find(mkeys.begin(), mkeys.end(), k) == mkeys.end()) mkeys.push_back(k);
    }
    std::string header = "name";
    for (const auto& k : pkeys) header += "," + k;
    for (const auto& k : mkeys) header += "," + k;
    CsvBuffer csv(header);
    for (const AuditResult& res : results) {
        std::string row = res.name;
        for (const auto& key : pkeys) {
            row += ",";
            for (const auto& [k, v] : res.params)
                if (k == key) {
                    row += v;
                    break;
                }
        }
        for (const auto& key : mkeys) {
            row += ",";
            for (const auto& [k, v] : res.metrics)
                if (k == key) {
                    row += fmt_g17(v);
                    break;
                }
        }
        csv.add_row(std::move(row));
    }
    rc.csvs.emplace_back(rc.out_dir / "maximal-audit.csv", std::move(csv));
    rc.note("seed: " + std::to_string(fspec.seed));
}

// ---------------------------------------------------------------- localization

void run_localization(RunContext& rc) {
    rc.cfg.validate_keys(
        with_common({"grid.dims", "grid.n", "grid.L", "symbol.m", "symbol.tau",
                     "schedule.mode", "schedule.points", "schedule.refinement",
                     "schedule.lambda_min", "schedule.lambda_max", "schedule.values",
                     "function.kind", "function.inner_radius", "function.outer_radius",
                     "function.amplitude", "function.center_radius", "function.width",
                     "function.ramp", "function.band_limit", "function.mass",
                     "function.seed", "audit.name", "audit.r",
                     "localization.max_terminal"}),
        {"audit.r"});
    int m_order = static_cast<int>(rc.cfg.get_int_or("symbol.m", 1));
    double tau = rc.cfg.get_real_or("symbol.tau", 0.0);
    double r = rc.cfg.get_real("audit.r");
    GridSpec grid = grid_from_config(rc.cfg);
    LambdaSchedule sched = schedule_from_config(rc.cfg, grid, m_order);
    TestFunctionSpec fspec = function_from_config(rc.cfg);
    SpatialField f = generate_test_function(fspec, grid);

    LocalizationTrace trace = localization_trace(f, r, sched, tau, m_order);

    CsvBuffer profile("lambda,l2_restricted,sup_restricted");
    for (const ProfileRow& row : trace.profile)
        profile.add_row(fmt_g17(row.lambda) + "," + fmt_g17(row.l2_restricted) + "," +
                        fmt_g17(row.sup_restricted));
    rc.csvs.emplace_back(rc.out_dir / "localization-run.csv", std::move(profile));

    CsvBuffer summary("name,metric,value");
    std::string name = rc.cfg.get_or("audit.name", "localization");
    for (const auto& [k, v] : trace.summary.metrics)
        summary.add_row(name + "," + k + "," + fmt_g17(v));
    rc.csvs.emplace_back(rc.out_dir / "localization-summary.csv", std::move(summary));

    // full-band exactness applies to the tau = 0 exact sweep
    if (tau == 0.0 && sched.mode == LambdaSchedule::Mode::exact_breakpoints) {
        double cap = rc.cfg.get_real_or("localization.max_terminal", 1e-10);
        rc.check(trace.summary.metric("terminal_l2") <= cap, "terminal_l2",
                 fmt_g17(trace.summary.metric("terminal_l2")) + " > " + fmt_g17(cap));
    }
    if (rc.cfg.get_bool_or("output.heatmap", false)) {
        fs::create_directories(rc.out_dir);
        SliceSpec slice{static_cast<int>(rc.cfg.get_int_or("output.slice_axis", 2)),
                        static_cast<int>(rc.cfg.get_int_or("output.slice_index", -1))};
        HeatmapScale sc =
            emit_heatmap(f, slice, (rc.out_dir / "input_field.pgm").string());
        rc.note("input_field.pgm scale: lo = " + fmt_g17(sc.lo) + ", hi = " +
                fmt_g17(sc.hi));
    }
    rc.note("seed: " + std::to_string(fspec.seed));
}

}  // namespace

int run_subcommand(const std::string& name, const RunOptions& opts) {
    RunContext rc{ExperimentConfig{}, fs::path{}, {}, {}, {}};
    try {
        rc.cfg = ExperimentConfig::parse_file(opts.config_path);
        if (opts.seed) rc.cfg.set("function.seed", std::to_string(*opts.seed));
        rc.out_dir = opts.out_dir.empty() ? fs::path(rc.cfg.get_or("output.dir", "."))
                                          : fs::path(opts.out_dir);

        if (name == "transform-check")
            run_transform_check(rc);
        else if (name == "partition-check")
            run_partition_check(rc);
        else if (name == "multiplier-audit")
            run_multiplier_audit(rc);
        else if (name == "maximal-audit")
            run_maximal_audit(rc);
        else if (name == "localization-run")
            run_localization(rc);
        else {
            std::cerr << "specloc: unknown subcommand `" << name << "`\n";
            return kExitConfig;
        }

        rc.commit(name);
        if (!rc.failures.empty()) {
            for (const Failure& f : rc.failures)
                std::cerr << "specloc: assertion failed: " << f.metric << ": "
                          << f.detail << "\n";
            return kExitAssertion;
        }
        return kExitOk;
    } catch (const config_error& e) {
        std::cerr << "specloc: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const hypothesis_error& e) {
        std::cerr << "specloc: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const budget_error& e) {
        std::cerr << "specloc: resource cap: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::length_error& e) {
        std::cerr << "specloc: resource cap: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "specloc: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "specloc: error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace specloc
