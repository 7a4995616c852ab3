#include "specloc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "specloc/cutoff.hpp"
#include "specloc/transform.hpp"

namespace specloc {

TestFunctionKind test_function_kind_from_name(const std::string& name) {
    if (name == "gaussian_shell") return TestFunctionKind::gaussian_shell;
    if (name == "smoothed_annulus_indicator")
        return TestFunctionKind::smoothed_annulus_indicator;
    if (name == "random_bandlimited_masked")
        return TestFunctionKind::random_bandlimited_masked;
    if (name == "narrow_bump") return TestFunctionKind::narrow_bump;
    throw std::invalid_argument("unknown test function kind: " + name);
}

std::string test_function_kind_name(TestFunctionKind k) {
    switch (k) {
        case TestFunctionKind::gaussian_shell: return "gaussian_shell";
        case TestFunctionKind::smoothed_annulus_indicator:
            return "smoothed_annulus_indicator";
        case TestFunctionKind::random_bandlimited_masked:
            return "random_bandlimited_masked";
        case TestFunctionKind::narrow_bump: return "narrow_bump";
    }
    throw std::logic_error("unreachable");
}

namespace {

// C-infinity radial support mask: exactly 0 for s <= inner or s >= outer.
double support_mask(const TestFunctionSpec& spec, double s) {
    double up = smooth_step(TransitionProfile::smooth_exp_step,
                            (s - spec.inner_radius) / spec.ramp);
    double dn = smooth_step(TransitionProfile::smooth_exp_step,
                            (spec.outer_radius - s) / spec.ramp);
    return up * dn;
}

// Deterministic standard normal pairs from raw mt19937_64 draws.
struct BoxMuller {
    std::mt19937_64 rng;
    bool have_spare = false;
    double spare = 0;

    explicit BoxMuller(unsigned long long seed) : rng(seed) {}

    double uniform() {  // (0, 1]
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
    }
    double normal() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        double u1 = uniform(), u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare = r * std::sin(2.0 * kPi * u2);
        have_spare = true;
        return r * std::cos(2.0 * kPi * u2);
    }
};

}  // namespace

SpatialField generate_test_function(const TestFunctionSpec& spec,
                                    const GridSpec& grid) {
    if (!(spec.inner_radius >= 0) || !(spec.outer_radius > spec.inner_radius))
        throw std::invalid_argument("test function: need 0 <= inner < outer");
    if (!(spec.ramp > 0) || !(spec.width > 0))
        throw std::invalid_argument("test function: ramp and width must be positive");
    if (spec.outer_radius + 1.0 > 0.5 * grid.extent)
        throw hypothesis_error(
            "test function: outer_radius leaves less than the unit periodization "
            "margin to the cube boundary");

    const std::size_t total = grid.point_count();
    std::vector<cplx> samples(total);

    switch (spec.kind) {
        case TestFunctionKind::gaussian_shell: {
            double two_w2 = 2.0 * spec.width * spec.width;
            for (std::size_t i = 0; i < total; ++i) {
                double s = std::sqrt(grid.coord_norm_sq(i));
                double msk = support_mask(spec, s);
                if (msk == 0.0) continue;
                double d = s - spec.center_radius;
                samples[i] = spec.amplitude * std::exp(-d * d / two_w2) * msk;
            }
            break;
        }
        case TestFunctionKind::smoothed_annulus_indicator: {
            for (std::size_t i = 0; i < total; ++i) {
                double s = std::sqrt(grid.coord_norm_sq(i));
                samples[i] = spec.amplitude * support_mask(spec, s);
            }
            break;
        }
        case TestFunctionKind::random_bandlimited_masked: {
            BoxMuller bm(spec.seed);
            std::vector<cplx> coeffs(total);
            double band_sq = spec.band_limit * spec.band_limit;
            double step_sq = grid.freq_step() * grid.freq_step();
            for (std::size_t i = 0; i < total; ++i) {
                double nsq = step_sq * static_cast<double>(grid.freq_index_norm_sq(i));
                if (nsq <= band_sq) {
                    double re = bm.normal();
                    double im = bm.normal();
                    coeffs[i] = cplx(re, im);
                }
            }
            SpatialField g = inverse_transform(SpectralField(grid, std::move(coeffs)));
            for (std::size_t i = 0; i < total; ++i) {
                double s = std::sqrt(grid.coord_norm_sq(i));
                double msk = support_mask(spec, s);
                samples[i] = msk == 0.0 ? cplx(0) : spec.amplitude * msk * g.samples[i];
            }
            break;
        }
        case TestFunctionKind::narrow_bump: {
            for (std::size_t i = 0; i < total; ++i) {
                double s = std::sqrt(grid.coord_norm_sq(i));
                double msk = support_mask(spec, s);
                if (msk == 0.0) continue;
                double arg = (s - spec.center_radius) / spec.width;
                if (std::abs(arg) >= 1.0) continue;
                samples[i] =
                    spec.amplitude * std::exp(-1.0 / (1.0 - arg * arg)) * msk;
            }
            if (spec.mass > 0) {
                double cell = std::pow(grid.spacing(), grid.dims);
                double integral = 0;
                for (const cplx& z : samples) integral += z.real();
                integral *= cell;
                if (!(integral > 0))
                    throw std::invalid_argument("narrow_bump: empty support on this grid");
                double scale = spec.mass / integral;
                for (cplx& z : samples) z *= scale;
            }
            break;
        }
    }

    // the mask construction guarantees exact zeros; fail loudly if not
    for (std::size_t i = 0; i < total; ++i)
        if (samples[i] != cplx(0) &&
            std::sqrt(grid.coord_norm_sq(i)) < spec.inner_radius)
            throw std::logic_error("test function: support invariant violated");
    return SpatialField(grid, std::move(samples));
}

double AuditResult::metric(const std::string& key) const {
    for (const auto& [k, v] : metrics)
        if (k == key) return v;
    throw std::out_of_range("AuditResult: no metric " + key);
}

void AuditResult::add_metric(const std::string& key, double v) {
    metrics.emplace_back(key, v);
}

void AuditResult::add_param(const std::string& key, const std::string& v) {
    params.emplace_back(key, v);
}

namespace {

void check_admissible(const SpatialField& f, double r) {
    if (!(r > 0) || !(r < 3))
        throw hypothesis_error("audit: the localization radius r must lie in (0, 3)");
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        if (f.samples[i] != cplx(0) && std::sqrt(f.spec.coord_norm_sq(i)) < 3.0)
            throw hypothesis_error(
                "audit: input has a nonzero sample inside |x| < 3 (support hypothesis)");
}

void add_provenance(AuditResult& res, const GridSpec& grid,
                    const LambdaSchedule& sched, double tau, int m_order) {
    res.add_param("dims", std::to_string(grid.dims));
    res.add_param("n", std::to_string(grid.n));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", grid.extent);
    res.add_param("L", buf);
    res.add_param("m", std::to_string(m_order));
    std::snprintf(buf, sizeof buf, "%.17g", tau);
    res.add_param("tau", buf);
    const char* mode = sched.mode == LambdaSchedule::Mode::exact_breakpoints
                           ? "exact_breakpoints"
                           : (sched.mode == LambdaSchedule::Mode::geometric
                                  ? "geometric"
                                  : "explicit");
    res.add_param("schedule_mode", mode);
    res.add_param("schedule_points", std::to_string(sched.values.size()));
    res.add_param("schedule_refinement",
                  std::to_string(sched.per_interval_refinement));
}

}  // namespace

AuditResult maximal_inequality_audit(const SpatialField& f, double r,
                                     const LambdaSchedule& sched, double tau,
                                     int m_order) {
    check_admissible(f, r);
    MaximalResult mx = maximal_function(f, sched, tau, m_order);
    double lhs_norm = restricted_l2_norm(mx.field, RadialRegion::inside(r));
    double rhs_norm = restricted_l2_norm(f, RadialRegion::outside(3.0));
    double lhs = lhs_norm * lhs_norm;
    double rhs = rhs_norm * rhs_norm;

    AuditResult res;
    res.name = "maximal_inequality";
    add_provenance(res, f.spec, sched, tau, m_order);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", r);
    res.add_param("r", buf);
    res.add_metric("lhs", lhs);
    res.add_metric("rhs", rhs);
    if (rhs == 0.0 && lhs != 0.0)
        throw std::logic_error("maximal_inequality_audit: zero input with nonzero maximal mass");
    res.add_metric("ratio", rhs == 0.0 ? 0.0 : lhs / rhs);
    res.add_metric("schedule_error_estimate", mx.refinement_error_estimate);
    return res;
}

AuditResult maximal_inequality_stability(const std::vector<TestFunctionSpec>& family,
                                         double r, double tau, int m_order,
                                         const StabilityLadder& ladder) {
    if (family.empty())
        throw std::invalid_argument("stability: empty test function family");
    if (ladder.grid_sizes.size() < 3)
        throw std::invalid_argument("stability: need at least 3 ladder rungs");

    AuditResult res;
    res.name = "maximal_inequality_stability";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", r);
    res.add_param("r", buf);
    std::snprintf(buf, sizeof buf, "%.17g", tau);
    res.add_param("tau", buf);
    res.add_param("m", std::to_string(m_order));
    res.add_param("family_size", std::to_string(family.size()));

    std::vector<double> rung_max;
    int geom_points = ladder.geometric_points;
    for (std::size_t rung = 0; rung < ladder.grid_sizes.size(); ++rung) {
        GridSpec grid(ladder.dims, ladder.grid_sizes[rung], ladder.extent);
        LambdaSchedule sched =
            ladder.schedule_mode == LambdaSchedule::Mode::exact_breakpoints
                ? LambdaSchedule::exact_breakpoints(grid, m_order, ladder.refinement)
                : LambdaSchedule::geometric(ladder.geometric_lo,
                                            grid.max_freq_norm_sq() * 2.0,
                                            geom_points);
        double worst = 0;
        for (const TestFunctionSpec& spec : family) {
            SpatialField f = generate_test_function(spec, grid);
            AuditResult one = maximal_inequality_audit(f, r, sched, tau, m_order);
            worst = std::max(worst, one.metric("ratio"));
        }
        rung_max.push_back(worst);
        std::snprintf(buf, sizeof buf, "rung%zu_max_ratio", rung);
        res.add_metric(buf, worst);
        geom_points *= 2;
    }
    double stability = rung_max.front() == 0.0 ? 0.0 : rung_max.back() / rung_max.front();
    res.add_metric("stability", stability);
    return res;
}

LocalizationTrace localization_trace(const SpatialField& f, double r,
                                     const LambdaSchedule& sched, double tau,
                                     int m_order) {
    check_admissible(f, r);
    LocalizationTrace trace;
    trace.profile =
        convergence_profile(f, sched, tau, m_order, RadialRegion::inside(r));

    double peak = 0, terminal = 0, onset = 0;
    for (const ProfileRow& row : trace.profile) peak = std::max(peak, row.l2_restricted);
    if (!trace.profile.empty()) terminal = trace.profile.back().l2_restricted;
    for (const ProfileRow& row : trace.profile)
        if (row.l2_restricted > 0.1 * peak) onset = row.lambda;

    trace.summary.name = "localization_trace";
    add_provenance(trace.summary, f.spec, sched, tau, m_order);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", r);
    trace.summary.add_param("r", buf);
    trace.summary.add_metric("terminal_l2", terminal);
    trace.summary.add_metric("peak_l2", peak);
    trace.summary.add_metric("onset_lambda", onset);
    return trace;
}

FrameMap canonical_frame(const std::array<double, 3>& center, double r0) {
    if (!(r0 > 0)) throw std::invalid_argument("canonical_frame: r0 must be positive");
    FrameMap map;
    map.scale = 3.0 / r0;
    map.center = center;
    return map;
}

void export_audit_csv(std::span<const AuditResult> results,
                      const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_audit_csv: cannot open " + path);
    // union of columns, first-seen order
    std::vector<std::string> pkeys, mkeys;
    for (const AuditResult& r : results) {
        for (const auto& [k, v] : r.params)
            if (std::find(pkeys.begin(), pkeys.end(), k) == pkeys.end())
                pkeys.push_back(k);
        for (const auto& [k, v] : r.metrics)
            if (std::find(mkeys.begin(), mkeys.end(), k) == mkeys.end())
                mkeys.push_back(k);
    }
    out << "name";
    for (const auto& k : pkeys) out << ',' << k;
    for (const auto& k : mkeys) out << ',' << k;
    out << '\n';
    char buf[64];
    for (const AuditResult& r : results) {
        out << r.name;
        for (const auto& key : pkeys) {
            out << ',';
            for (const auto& [k, v] : r.params)
                if (k == key) {
                    out << v;
                    break;
                }
        }
        for (const auto& key : mkeys) {
            out << ',';
            for (const auto& [k, v] : r.metrics)
                if (k == key) {
                    std::snprintf(buf, sizeof buf, "%.17g", v);
                    out << buf;
                    break;
                }
        }
        out << '\n';
    }
}

void export_profile_csv(std::span<const ProfileRow> rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_profile_csv: cannot open " + path);
    out << "lambda,l2_restricted,sup_restricted\n";
    char buf[128];
    for (const ProfileRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.lambda,
                      r.l2_restricted, r.sup_restricted);
        out << buf;
    }
}

}  // namespace specloc
