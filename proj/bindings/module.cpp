#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "specloc/experiments.hpp"
#include "specloc/expansion.hpp"
#include "specloc/multiplier.hpp"
#include "specloc/oracles.hpp"
#include "specloc/transform.hpp"

namespace py = pybind11;
using namespace specloc;

namespace {

using carr = py::array_t<cplx, py::array::c_style | py::array::forcecast>;
using darr = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<cplx> to_vector(const GridSpec& g, const carr& a) {
    if (static_cast<std::size_t>(a.size()) != g.point_count())
        throw std::invalid_argument("array size does not match the grid");
    const cplx* p = a.data();
    return std::vector<cplx>(p, p + a.size());
}

carr to_array(const GridSpec& g, const std::vector<cplx>& v) {
    std::vector<py::ssize_t> shape(static_cast<std::size_t>(g.dims), g.n);
    carr out(shape);
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

darr to_array_real(const GridSpec& g, const std::vector<double>& v) {
    std::vector<py::ssize_t> shape(static_cast<std::size_t>(g.dims), g.n);
    darr out(shape);
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

LambdaSchedule schedule_from_args(const GridSpec& g, int m_order,
                                  const std::string& mode, int points,
                                  int refinement) {
    if (mode == "exact_breakpoints")
        return LambdaSchedule::exact_breakpoints(g, m_order, refinement);
    if (mode == "geometric")
        return LambdaSchedule::geometric(
            0.25, pow_int(g.max_freq_norm_sq(), m_order) * 2.0, points);
    throw std::invalid_argument("schedule mode must be exact_breakpoints or geometric");
}

TestFunctionSpec spec_from_kwargs(const std::string& kind, double inner,
                                  double outer, double amplitude, double center,
                                  double width, double ramp, double band_limit,
                                  double mass, unsigned long long seed) {
    TestFunctionSpec spec;
    spec.kind = test_function_kind_from_name(kind);
    spec.inner_radius = inner;
    spec.outer_radius = outer;
    spec.amplitude = amplitude;
    spec.center_radius = center;
    spec.width = width;
    spec.ramp = ramp;
    spec.band_limit = band_limit;
    spec.mass = mass;
    spec.seed = seed;
    return spec;
}

py::dict audit_to_dict(const AuditResult& res) {
    py::dict d;
    d["name"] = res.name;
    py::dict params, metrics;
    for (const auto& [k, v] : res.params) params[py::str(k)] = v;
    for (const auto& [k, v] : res.metrics) metrics[py::str(k)] = v;
    d["params"] = params;
    d["metrics"] = metrics;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "spectral expansions of the polyharmonic operator: partial "
              "integrals, maximal sweeps, dyadic cutoffs and localized "
              "multiplier audits";

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<int, int, double>(), py::arg("dims"), py::arg("n"),
             py::arg("extent"))
        .def_readonly("dims", &GridSpec::dims)
        .def_readonly("n", &GridSpec::n)
        .def_readonly("extent", &GridSpec::extent)
        .def_property_readonly("spacing", &GridSpec::spacing)
        .def_property_readonly("freq_step", &GridSpec::freq_step)
        .def("coord", &GridSpec::coord)
        .def("freq", &GridSpec::freq)
        .def("__repr__", [](const GridSpec& g) {
            return "GridSpec(dims=" + std::to_string(g.dims) +
                   ", n=" + std::to_string(g.n) +
                   ", extent=" + std::to_string(g.extent) + ")";
        });

    m.def(
        "forward_transform",
        [](const GridSpec& g, const carr& samples) {
            return to_array(g, forward_transform(SpatialField(g, to_vector(g, samples))).coeffs);
        },
        py::arg("grid"), py::arg("samples"));
    m.def(
        "inverse_transform",
        [](const GridSpec& g, const carr& coeffs) {
            return to_array(g, inverse_transform(SpectralField(g, to_vector(g, coeffs))).samples);
        },
        py::arg("grid"), py::arg("coeffs"));
    m.def(
        "direct_transform_reference",
        [](const GridSpec& g, const carr& samples, std::size_t max_points) {
            return to_array(
                g, direct_transform_reference(SpatialField(g, to_vector(g, samples)),
                                              max_points)
                       .coeffs);
        },
        py::arg("grid"), py::arg("samples"), py::arg("max_points") = 4096);

    m.def(
        "evaluate_symbol",
        [](int m_order, double lam, double tau, double xi_norm_sq) {
            return evaluate_symbol_radial(SymbolParams(m_order, lam, tau), xi_norm_sq);
        },
        py::arg("m"), py::arg("lam"), py::arg("tau"), py::arg("xi_norm_sq"));
    m.def(
        "apply_multiplier",
        [](const GridSpec& g, int m_order, double lam, double tau, const carr& coeffs) {
            return to_array(g, apply_multiplier(SymbolParams(m_order, lam, tau),
                                                SpectralField(g, to_vector(g, coeffs)))
                                   .coeffs);
        },
        py::arg("grid"), py::arg("m"), py::arg("lam"), py::arg("tau"), py::arg("coeffs"));
    m.def(
        "partial_integral",
        [](const GridSpec& g, const carr& samples, int m_order, double lam, double tau) {
            return to_array(g, partial_integral(SpatialField(g, to_vector(g, samples)),
                                                SymbolParams(m_order, lam, tau))
                                   .samples);
        },
        py::arg("grid"), py::arg("samples"), py::arg("m"), py::arg("lam"),
        py::arg("tau") = 0.0);

    m.def(
        "exact_breakpoints",
        [](const GridSpec& g, int m_order) {
            return LambdaSchedule::exact_breakpoints(g, m_order).values;
        },
        py::arg("grid"), py::arg("m") = 1);

    m.def(
        "maximal_function",
        [](const GridSpec& g, const carr& samples, double tau, int m_order,
           const std::string& mode, int points, int refinement) {
            LambdaSchedule sched = schedule_from_args(g, m_order, mode, points, refinement);
            MaximalResult mx = maximal_function(SpatialField(g, to_vector(g, samples)),
                                                sched, tau, m_order);
            return py::make_tuple(to_array_real(g, mx.field.values),
                                  mx.refinement_error_estimate);
        },
        py::arg("grid"), py::arg("samples"), py::arg("tau") = 0.0, py::arg("m") = 1,
        py::arg("mode") = "exact_breakpoints", py::arg("points") = 512,
        py::arg("refinement") = 8);

    m.def(
        "convergence_profile",
        [](const GridSpec& g, const carr& samples, double tau, int m_order,
           double region_radius, const std::string& mode, int points, int refinement) {
            LambdaSchedule sched = schedule_from_args(g, m_order, mode, points, refinement);
            auto rows = convergence_profile(SpatialField(g, to_vector(g, samples)),
                                            sched, tau, m_order,
                                            RadialRegion::inside(region_radius));
            py::array_t<double> lam(static_cast<py::ssize_t>(rows.size()));
            py::array_t<double> l2(static_cast<py::ssize_t>(rows.size()));
            py::array_t<double> sup(static_cast<py::ssize_t>(rows.size()));
            for (std::size_t i = 0; i < rows.size(); ++i) {
                lam.mutable_at(static_cast<py::ssize_t>(i)) = rows[i].lambda;
                l2.mutable_at(static_cast<py::ssize_t>(i)) = rows[i].l2_restricted;
                sup.mutable_at(static_cast<py::ssize_t>(i)) = rows[i].sup_restricted;
            }
            return py::make_tuple(lam, l2, sup);
        },
        py::arg("grid"), py::arg("samples"), py::arg("tau") = 0.0, py::arg("m") = 1,
        py::arg("region_radius") = 1.0, py::arg("mode") = "exact_breakpoints",
        py::arg("points") = 512, py::arg("refinement") = 8);

    py::enum_<TransitionProfile>(m, "TransitionProfile")
        .value("smooth_exp_step", TransitionProfile::smooth_exp_step)
        .value("poly_c4_step", TransitionProfile::poly_c4_step);

    py::class_<CutoffFamily>(m, "CutoffFamily")
        .def(py::init<double, TransitionProfile>(), py::arg("r"),
             py::arg("profile") = TransitionProfile::smooth_exp_step)
        .def_readonly("r", &CutoffFamily::r)
        .def_property_readonly("inner", &CutoffFamily::inner)
        .def_property_readonly("outer", &CutoffFamily::outer)
        .def("phi", &CutoffFamily::phi)
        .def("psi", &CutoffFamily::psi)
        .def("psi_j", &CutoffFamily::psi_j)
        .def("partition_residual", &CutoffFamily::partition_residual);

    py::class_<RadialTable>(m, "RadialTable")
        .def_readonly("dims", &RadialTable::dims)
        .def_readonly("step", &RadialTable::step)
        .def("value", &RadialTable::value)
        .def("value_j", &RadialTable::value_j)
        .def("abs_tail_integral", &RadialTable::abs_tail_integral)
        .def_property_readonly("rho_max", &RadialTable::rho_max)
        .def_property_readonly("table_values", [](const RadialTable& t) {
            py::array_t<double> out(static_cast<py::ssize_t>(t.values.size()));
            std::copy(t.values.begin(), t.values.end(), out.mutable_data());
            return out;
        });

    m.def(
        "tabulate_psi_hat",
        [](const CutoffFamily& fam, int dims, double step, double rho_max,
           double quad_step) {
            RadialTableParams p;
            p.step = step;
            p.rho_max = rho_max;
            p.quad_step = quad_step;
            return tabulate_psi_hat(fam, dims, p);
        },
        py::arg("family"), py::arg("dims") = 1, py::arg("step") = 1.0 / 128.0,
        py::arg("rho_max") = 2048.0, py::arg("quad_step") = 2e-4);

    py::class_<MultiplierContext>(m, "MultiplierContext")
        .def(py::init<CutoffFamily, RadialTable, double>(), py::arg("family"),
             py::arg("table"), py::arg("quad_step") = 0.0)
        .def_property_readonly("dims", &MultiplierContext::dims)
        .def_property_readonly("max_j", &MultiplierContext::max_j)
        .def_readonly("quad_step", &MultiplierContext::quad_step);

    m.def(
        "localized_multiplier",
        [](const MultiplierContext& ctx, int j, double tau, int m_order, double t,
           double xi_radius) {
            return localized_multiplier(ctx, j, tau, m_order, t, xi_radius);
        },
        py::arg("ctx"), py::arg("j"), py::arg("tau"), py::arg("m"), py::arg("t"),
        py::arg("xi_radius"));
    m.def(
        "tail_bound_check",
        [](const MultiplierContext& ctx, int j, double t, double xi_radius) {
            TailBound tb = tail_bound_check(ctx, j, t, xi_radius);
            return py::make_tuple(tb.lhs, tb.rhs, tb.u);
        },
        py::arg("ctx"), py::arg("j"), py::arg("t"), py::arg("xi_radius"));
    m.def(
        "envelope_decay_fit",
        [](const MultiplierContext& ctx, int j, double tau, int m_order,
           double u_max, double fit_lo, double fit_hi) {
            EnvelopeSweep sweep;
            sweep.u_max = u_max;
            sweep.fit_lo = fit_lo;
            sweep.fit_hi = fit_hi;
            DecayFit fit = envelope_decay_fit(ctx, j, tau, m_order, sweep);
            py::dict d;
            d["j"] = fit.j;
            d["tau"] = fit.tau;
            d["C"] = fit.fitted_c;
            d["n"] = fit.fitted_n;
            d["residual"] = fit.residual;
            d["range"] = py::make_tuple(fit.range_lo, fit.range_hi);
            d["points"] = fit.points;
            return d;
        },
        py::arg("ctx"), py::arg("j"), py::arg("tau"), py::arg("m") = 1,
        py::arg("u_max") = 1100.0, py::arg("fit_lo") = 10.0,
        py::arg("fit_hi") = 1000.0);

    m.def(
        "generate_test_function",
        [](const GridSpec& g, const std::string& kind, double inner, double outer,
           double amplitude, double center, double width, double ramp,
           double band_limit, double mass, unsigned long long seed) {
            return to_array(g, generate_test_function(
                                   spec_from_kwargs(kind, inner, outer, amplitude,
                                                    center, width, ramp, band_limit,
                                                    mass, seed),
                                   g)
                                   .samples);
        },
        py::arg("grid"), py::arg("kind") = "gaussian_shell",
        py::arg("inner_radius") = 3.0, py::arg("outer_radius") = 7.0,
        py::arg("amplitude") = 1.0, py::arg("center_radius") = 4.0,
        py::arg("width") = 0.3, py::arg("ramp") = 0.5, py::arg("band_limit") = 10.0,
        py::arg("mass") = 0.0, py::arg("seed") = 1);

    m.def(
        "maximal_inequality_audit",
        [](const GridSpec& g, const carr& samples, double r, double tau, int m_order,
           const std::string& mode, int points, int refinement) {
            LambdaSchedule sched = schedule_from_args(g, m_order, mode, points, refinement);
            return audit_to_dict(maximal_inequality_audit(
                SpatialField(g, to_vector(g, samples)), r, sched, tau, m_order));
        },
        py::arg("grid"), py::arg("samples"), py::arg("r") = 1.0, py::arg("tau") = 0.0,
        py::arg("m") = 1, py::arg("mode") = "exact_breakpoints",
        py::arg("points") = 512, py::arg("refinement") = 8);

    m.def(
        "localization_trace",
        [](const GridSpec& g, const carr& samples, double r, double tau, int m_order) {
            LambdaSchedule sched = LambdaSchedule::exact_breakpoints(g, m_order);
            LocalizationTrace trace = localization_trace(
                SpatialField(g, to_vector(g, samples)), r, sched, tau, m_order);
            py::array_t<double> lam(static_cast<py::ssize_t>(trace.profile.size()));
            py::array_t<double> l2(static_cast<py::ssize_t>(trace.profile.size()));
            for (std::size_t i = 0; i < trace.profile.size(); ++i) {
                lam.mutable_at(static_cast<py::ssize_t>(i)) = trace.profile[i].lambda;
                l2.mutable_at(static_cast<py::ssize_t>(i)) = trace.profile[i].l2_restricted;
            }
            py::dict d = audit_to_dict(trace.summary);
            d["lambda"] = lam;
            d["l2_restricted"] = l2;
            return d;
        },
        py::arg("grid"), py::arg("samples"), py::arg("r") = 1.0, py::arg("tau") = 0.0,
        py::arg("m") = 1);

    m.def(
        "restricted_l2_norm",
        [](const GridSpec& g, const carr& samples, double rho, bool inside) {
            RadialRegion region =
                inside ? RadialRegion::inside(rho) : RadialRegion::outside(rho);
            return restricted_l2_norm(SpatialField(g, to_vector(g, samples)), region);
        },
        py::arg("grid"), py::arg("samples"), py::arg("rho"), py::arg("inside") = true);

    m.attr("__version__") = "0.1.0";
}
