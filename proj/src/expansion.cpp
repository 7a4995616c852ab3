#include "specloc/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specloc/parallel.hpp"
#include "specloc/transform.hpp"

namespace specloc {

LambdaSchedule LambdaSchedule::exact_breakpoints(const GridSpec& grid, int m_order,
                                                 int refinement) {
    if (m_order < 1) throw std::invalid_argument("exact_breakpoints: m_order < 1");
    if (refinement < 1) throw std::invalid_argument("exact_breakpoints: refinement < 1");
    // distinct integer |k|^2 shells keep the dedup exact
    std::vector<long long> shells;
    shells.reserve(grid.point_count());
    for (std::size_t i = 0; i < grid.point_count(); ++i)
        shells.push_back(grid.freq_index_norm_sq(i));
    std::sort(shells.begin(), shells.end());
    shells.erase(std::unique(shells.begin(), shells.end()), shells.end());

    LambdaSchedule s;
    s.mode = Mode::exact_breakpoints;
    s.per_interval_refinement = refinement;
    double step_sq = grid.freq_step() * grid.freq_step();
    s.values.reserve(shells.size());
    for (long long ksq : shells)
        s.values.push_back(pow_int(step_sq * static_cast<double>(ksq), m_order));
    return s;
}

LambdaSchedule LambdaSchedule::geometric(double lambda_min, double lambda_max,
                                         int points) {
    if (!(lambda_min > 0) || !(lambda_max > lambda_min))
        throw std::invalid_argument("geometric schedule: need 0 < lambda_min < lambda_max");
    if (points < 2) throw std::invalid_argument("geometric schedule: points < 2");
    LambdaSchedule s;
    s.mode = Mode::geometric;
    s.values.resize(static_cast<std::size_t>(points));
    double ratio = std::log(lambda_max / lambda_min);
    for (int i = 0; i < points; ++i)
        s.values[static_cast<std::size_t>(i)] =
            lambda_min * std::exp(ratio * i / (points - 1));
    return s;
}

LambdaSchedule LambdaSchedule::explicit_list(std::vector<double> values,
                                             int refinement) {
    if (values.empty()) throw std::invalid_argument("explicit schedule: empty");
    for (double v : values)
        if (!(v > 0)) throw std::invalid_argument("explicit schedule: values must be positive");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw std::invalid_argument("explicit schedule: values must be strictly increasing");
    LambdaSchedule s;
    s.mode = Mode::explicit_list;
    s.values = std::move(values);
    s.per_interval_refinement = refinement;
    return s;
}

SpatialField partial_integral(const SpatialField& f, const SymbolParams& p) {
    return inverse_transform(apply_multiplier(p, forward_transform(f)));
}

namespace {

// Frequency indices of one grid sorted by integer shell |k|^2, plus the
// breakpoint boundaries (first index of each distinct shell).
struct ShellOrder {
    std::vector<std::size_t> index;   // lattice flat indices, shell-ascending
    std::vector<std::size_t> offset;  // offset[b] .. offset[b+1) = shell b
};

ShellOrder shell_order(const GridSpec& grid) {
    ShellOrder so;
    std::size_t total = grid.point_count();
    std::vector<std::pair<long long, std::size_t>> keyed(total);
    for (std::size_t i = 0; i < total; ++i)
        keyed[i] = {grid.freq_index_norm_sq(i), i};
    std::sort(keyed.begin(), keyed.end());
    so.index.resize(total);
    for (std::size_t i = 0; i < total; ++i) so.index[i] = keyed[i].second;
    so.offset.push_back(0);
    for (std::size_t i = 1; i < total; ++i)
        if (keyed[i].first != keyed[i - 1].first) so.offset.push_back(i);
    so.offset.push_back(total);
    return so;
}

// lambda samples for sweeps that evaluate the multiplier pointwise
// (geometric / explicit, or exact mode with tau != 0)
std::vector<double> sample_lambdas(const LambdaSchedule& sched, double tau) {
    if (sched.mode != LambdaSchedule::Mode::exact_breakpoints) return sched.values;
    // exact mode, tau != 0: subdivide breakpoint intervals geometrically and
    // extend past the top level
    const std::vector<double>& b = sched.values;
    int refine = sched.per_interval_refinement;
    std::vector<double> out;
    std::size_t start = 0;
    while (start < b.size() && !(b[start] > 0)) ++start;  // skip the DC level 0
    if (start == b.size()) return out;
    out.push_back(b[start]);  // constant on (0, b_first]
    for (std::size_t i = start; i + 1 < b.size(); ++i) {
        double ratio = b[i + 1] / b[i];
        for (int q = 1; q <= refine; ++q)
            out.push_back(b[i] * std::pow(ratio, static_cast<double>(q) / refine));
    }
    for (int q = 1; q <= refine; ++q)
        out.push_back(b.back() * std::ldexp(1.0, q));
    (void)tau;
    return out;
}

double log_gap_estimate(const std::vector<double>& lambdas, double tau, double fnorm) {
    if (tau == 0.0 || lambdas.size() < 2) return 0.0;
    double gap = 0;
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        gap = std::max(gap, std::log(lambdas[i] / lambdas[i - 1]));
    return std::abs(tau) * gap * fnorm;
}

}  // namespace

MaximalResult maximal_function(const SpatialField& f, const LambdaSchedule& sched,
                               double tau, int m_order) {
    if (sched.values.empty()) throw std::invalid_argument("maximal_function: empty schedule");
    const GridSpec& grid = f.spec;
    const std::size_t total = grid.point_count();
    SpectralField F = forward_transform(f);

    ScalarField out{grid, std::vector<double>(total, 0.0)};
    double err_est = 0;

    if (sched.mode == LambdaSchedule::Mode::exact_breakpoints && tau == 0.0) {
        // shell-inclusive partial sums: exact sup over lambda > 0
        ShellOrder so = shell_order(grid);
        std::size_t nb = so.offset.size() - 1;
        if (nb != sched.values.size())
            throw std::invalid_argument("maximal_function: schedule does not match the grid");

        int chunks = std::max(1, std::min<int>(thread_count(),
                                               static_cast<int>(nb)));
        std::vector<std::vector<double>> partial(
            static_cast<std::size_t>(chunks));
        std::size_t per = (nb + chunks - 1) / static_cast<std::size_t>(chunks);
        parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c0,
                                                           std::size_t c1) {
            for (std::size_t c = c0; c < c1; ++c) {
                std::size_t b0 = c * per, b1 = std::min(nb, b0 + per);
                if (b0 >= b1) continue;
                std::vector<double>& lmax = partial[c];
                lmax.assign(total, 0.0);
                std::vector<cplx> acc(total, cplx(0));
                for (std::size_t i = 0; i < so.offset[b0]; ++i)
                    acc[so.index[i]] = F.coeffs[so.index[i]];
                for (std::size_t bp = b0; bp < b1; ++bp) {
                    for (std::size_t i = so.offset[bp]; i < so.offset[bp + 1]; ++i)
                        acc[so.index[i]] = F.coeffs[so.index[i]];
                    SpatialField E =
                        inverse_transform(SpectralField(grid, acc));
                    for (std::size_t p = 0; p < total; ++p)
                        lmax[p] = std::max(lmax[p], std::abs(E.samples[p]));
                }
            }
        });
        for (const auto& lmax : partial)
            if (!lmax.empty())
                for (std::size_t p = 0; p < total; ++p)
                    out.values[p] = std::max(out.values[p], lmax[p]);
        return {std::move(out), 0.0};
    }

    std::vector<double> lambdas = sample_lambdas(sched, tau);
    if (lambdas.empty()) throw std::invalid_argument("maximal_function: schedule has no positive level");
    err_est = log_gap_estimate(lambdas, tau, l2_norm(f));

    int chunks = std::max(1, std::min<int>(thread_count(),
                                           static_cast<int>(lambdas.size())));
    std::vector<std::vector<double>> partial(static_cast<std::size_t>(chunks));
    std::size_t per = (lambdas.size() + chunks - 1) / static_cast<std::size_t>(chunks);
    parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c0, std::size_t c1) {
        for (std::size_t c = c0; c < c1; ++c) {
            std::size_t l0 = c * per, l1 = std::min(lambdas.size(), l0 + per);
            if (l0 >= l1) continue;
            std::vector<double>& lmax = partial[c];
            lmax.assign(total, 0.0);
            for (std::size_t q = l0; q < l1; ++q) {
                SymbolParams p(m_order, lambdas[q], tau);
                SpatialField E = inverse_transform(apply_multiplier(p, F));
                for (std::size_t i = 0; i < total; ++i)
                    lmax[i] = std::max(lmax[i], std::abs(E.samples[i]));
            }
        }
    });
    for (const auto& lmax : partial)
        if (!lmax.empty())
            for (std::size_t p = 0; p < total; ++p)
                out.values[p] = std::max(out.values[p], lmax[p]);
    return {std::move(out), err_est};
}

std::vector<ProfileRow> convergence_profile(const SpatialField& f,
                                            const LambdaSchedule& sched,
                                            double tau, int m_order,
                                            const RadialRegion& region) {
    if (sched.values.empty()) throw std::invalid_argument("convergence_profile: empty schedule");
    const GridSpec& grid = f.spec;
    SpectralField F = forward_transform(f);

    if (sched.mode == LambdaSchedule::Mode::exact_breakpoints && tau == 0.0) {
        ShellOrder so = shell_order(grid);
        std::size_t nb = so.offset.size() - 1;
        std::vector<ProfileRow> rows(nb);
        std::size_t per = 0;
        int chunks = std::max(1, std::min<int>(thread_count(), static_cast<int>(nb)));
        per = (nb + chunks - 1) / static_cast<std::size_t>(chunks);
        parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c0, std::size_t c1) {
            for (std::size_t c = c0; c < c1; ++c) {
                std::size_t b0 = c * per, b1 = std::min(nb, b0 + per);
                if (b0 >= b1) continue;
                std::vector<cplx> acc(grid.point_count(), cplx(0));
                for (std::size_t i = 0; i < so.offset[b0]; ++i)
                    acc[so.index[i]] = F.coeffs[so.index[i]];
                for (std::size_t bp = b0; bp < b1; ++bp) {
                    for (std::size_t i = so.offset[bp]; i < so.offset[bp + 1]; ++i)
                        acc[so.index[i]] = F.coeffs[so.index[i]];
                    SpatialField E = inverse_transform(SpectralField(grid, acc));
                    rows[bp] = {sched.values[bp], restricted_l2_norm(E, region),
                                restricted_sup_norm(E, region)};
                }
            }
        });
        return rows;
    }

    std::vector<double> lambdas = sample_lambdas(sched, tau);
    std::vector<ProfileRow> rows(lambdas.size());
    parallel_for(lambdas.size(), [&](std::size_t l0, std::size_t l1) {
        for (std::size_t q = l0; q < l1; ++q) {
            SymbolParams p(m_order, lambdas[q], tau);
            SpatialField E = inverse_transform(apply_multiplier(p, F));
            rows[q] = {lambdas[q], restricted_l2_norm(E, region),
                       restricted_sup_norm(E, region)};
        }
    });
    return rows;
}

}  // namespace specloc
