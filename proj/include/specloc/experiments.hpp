#ifndef SPECLOC_EXPERIMENTS_HPP
#define SPECLOC_EXPERIMENTS_HPP

#include <array>
#include <string>
#include <vector>

#include "specloc/expansion.hpp"
#include "specloc/field.hpp"

namespace specloc {

/// Input violates a hypothesis an audit depends on (support geometry, radius
/// range); distinct from plain argument errors so the CLI can name it.
struct hypothesis_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class TestFunctionKind {
    gaussian_shell,
    smoothed_annulus_indicator,
    random_bandlimited_masked,
    narrow_bump,
};

TestFunctionKind test_function_kind_from_name(const std::string& name);
std::string test_function_kind_name(TestFunctionKind k);

/// Radially supported test functions vanishing EXACTLY (0.0 at every lattice
/// point) below inner_radius and above outer_radius.  Random kinds are fully
/// determined by `seed` (own Box-Muller on mt19937_64 draws, so the samples
/// do not depend on the standard library's distribution internals).
struct TestFunctionSpec {
    TestFunctionKind kind = TestFunctionKind::gaussian_shell;
    double inner_radius = 3.0;
    double outer_radius = 7.0;
    double amplitude = 1.0;
    double center_radius = 4.0;  // gaussian_shell / narrow_bump peak radius
    double width = 0.3;          // gaussian sigma / bump half-width
    double ramp = 0.5;           // support mask transition width
    double band_limit = 10.0;    // random kind: keep |xi| <= band_limit
    double mass = 0.0;           // narrow_bump: normalize lattice integral when > 0
    unsigned long long seed = 1;
};

/// Geometry guard: outer_radius + margin <= L/2 with margin >= 1, else the
/// periodic images would leak into the audited core.
SpatialField generate_test_function(const TestFunctionSpec& spec,
                                    const GridSpec& grid);

struct AuditResult {
    std::string name;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::pair<std::string, double>> metrics;

    double metric(const std::string& key) const;
    void add_metric(const std::string& key, double v);
    void add_param(const std::string& key, const std::string& v);
};

/// Maximal-inequality ratio for one admissible f (support in {|x| >= 3}):
///   lhs = ||E_* f||^2 restricted to |x| <= r,  rhs = ||f||^2 on |x| >= 3,
///   ratio = lhs / rhs (reported 0 for the zero function).
/// Rejects r outside (0, 3) and any nonzero sample with |x| < 3.
AuditResult maximal_inequality_audit(const SpatialField& f, double r,
                                     const LambdaSchedule& sched, double tau,
                                     int m_order);

struct StabilityLadder {
    std::vector<int> grid_sizes;  // >= 3 rungs
    int dims = 1;
    double extent = 16.0;
    // exact schedules refine with the grid; geometric ladders double `points`
    LambdaSchedule::Mode schedule_mode = LambdaSchedule::Mode::exact_breakpoints;
    int geometric_points = 512;
    double geometric_lo = 0.25;
    int refinement = 8;
};

/// Max audit ratio over a test-function family at each ladder rung; the
/// stability metric is (last rung max) / (first rung max).
AuditResult maximal_inequality_stability(const std::vector<TestFunctionSpec>& family,
                                         double r, double tau, int m_order,
                                         const StabilityLadder& ladder);

struct LocalizationTrace {
    AuditResult summary;  // terminal_l2, peak_l2, onset_lambda
    std::vector<ProfileRow> profile;
};

/// Restricted convergence profile on |x| <= r for an admissible f, plus the
/// terminal / peak / onset diagnostics.
LocalizationTrace localization_trace(const SpatialField& f, double r,
                                     const LambdaSchedule& sched, double tau,
                                     int m_order);

/// Translation + dilation map y = scale * (x - center) carrying an arbitrary
/// vanishing-ball configuration (center, r0) to the canonical frame where the
/// support lies in {|y| >= 3}.  Maps grid parameters only; samples are to be
/// regenerated in the new frame.
struct FrameMap {
    double scale = 1.0;
    std::array<double, 3> center{0, 0, 0};

    GridSpec map_grid(const GridSpec& g) const {
        return GridSpec(g.dims, g.n, g.extent * scale);
    }
    double map_radius(double rho) const { return rho * scale; }
};

FrameMap canonical_frame(const std::array<double, 3>& center, double r0);

void export_audit_csv(std::span<const AuditResult> results,
                      const std::string& path);
void export_profile_csv(std::span<const ProfileRow> rows,
                        const std::string& path);

}  // namespace specloc

#endif
