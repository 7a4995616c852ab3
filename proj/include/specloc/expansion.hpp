#ifndef SPECLOC_EXPANSION_HPP
#define SPECLOC_EXPANSION_HPP

#include <vector>

#include "specloc/field.hpp"
#include "specloc/symbol.hpp"

namespace specloc {

/// Spectral-level sweep for partial integrals and the maximal operator.
///
/// exact_breakpoints: values are the sorted distinct lattice levels
/// |xi_k|^{2m} (including 0 for the DC shell).  The projection is a step
/// function of lambda between consecutive levels, so listed value b_i stands
/// for the whole interval (b_i, b_{i+1}] and partial sums are evaluated with
/// the shell b_i INCLUDED (the value the projection takes just above b_i).
/// With tau = 0 the pointwise maximum over these finitely many partial sums
/// equals the supremum over all lambda > 0 exactly.
///
/// For tau != 0 the multiplier varies continuously between breakpoints; each
/// interval is subdivided geometrically into per_interval_refinement samples
/// and the sweep is extended past the top level by doubling steps.  The
/// resulting maximum is a certified lower bound on the true supremum.
struct LambdaSchedule {
    enum class Mode { exact_breakpoints, geometric, explicit_list };
    Mode mode = Mode::exact_breakpoints;
    std::vector<double> values;
    int per_interval_refinement = 8;

    static LambdaSchedule exact_breakpoints(const GridSpec& grid, int m_order,
                                            int refinement = 8);
    static LambdaSchedule geometric(double lambda_min, double lambda_max,
                                    int points);
    static LambdaSchedule explicit_list(std::vector<double> values,
                                        int refinement = 8);
};

/// inverse_transform(apply_multiplier(p, forward_transform(f)))
SpatialField partial_integral(const SpatialField& f, const SymbolParams& p);

struct MaximalResult {
    ScalarField field;  // pointwise max over the sweep of |E_lambda f|
    // Heuristic refinement diagnostic for tau != 0 sweeps (0 when the sweep
    // is exact): |tau| * max log-gap of the lambda samples * ||f||_2.
    double refinement_error_estimate = 0;
};

MaximalResult maximal_function(const SpatialField& f, const LambdaSchedule& sched,
                               double tau, int m_order);

struct ProfileRow {
    double lambda;
    double l2_restricted;
    double sup_restricted;
};

/// Norms of E_lambda f restricted to `region`, one row per evaluated lambda.
std::vector<ProfileRow> convergence_profile(const SpatialField& f,
                                            const LambdaSchedule& sched,
                                            double tau, int m_order,
                                            const RadialRegion& region);

}  // namespace specloc

#endif
