#include "specloc/cutoff.hpp"

#include <algorithm>
#include <cmath>

namespace specloc {

TransitionProfile transition_profile_from_name(const std::string& name) {
    if (name == "smooth_exp_step") return TransitionProfile::smooth_exp_step;
    if (name == "poly_c4_step") return TransitionProfile::poly_c4_step;
    throw std::invalid_argument("unknown transition profile: " + name);
}

std::string transition_profile_name(TransitionProfile p) {
    switch (p) {
        case TransitionProfile::smooth_exp_step: return "smooth_exp_step";
        case TransitionProfile::poly_c4_step: return "poly_c4_step";
    }
    throw std::logic_error("unreachable");
}

double smooth_step(TransitionProfile profile, double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    switch (profile) {
        case TransitionProfile::smooth_exp_step: {
            double e0 = std::exp(-1.0 / u);
            double e1 = std::exp(-1.0 / (1.0 - u));
            return e0 / (e0 + e1);
        }
        case TransitionProfile::poly_c4_step: {
            // integral of u^4 (1-u)^4, normalized; C^4 endpoints
            double u5 = u * u * u * u * u;
            double v = u5 * (126.0 + u * (-420.0 + u * (540.0 + u * (-315.0 + u * 70.0))));
            return std::clamp(v, 0.0, 1.0);
        }
    }
    return 0.0;
}

double CutoffFamily::phi(double t) const {
    if (t < 0) throw std::invalid_argument("CutoffFamily::phi: t must be >= 0");
    const double a = inner(), b = outer();
    if (t <= a) return 1.0;
    if (t >= b) return 0.0;
    return smooth_step(profile, (b - t) / (b - a));
}

double CutoffFamily::psi(double xnorm) const {
    return phi(xnorm) - phi(2.0 * xnorm);
}

double CutoffFamily::psi_j(int j, double xnorm) const {
    if (j < 1) throw std::invalid_argument("CutoffFamily::psi_j: j must be >= 1");
    return psi(std::ldexp(xnorm, -j));
}

double CutoffFamily::partition_residual(double xnorm, int J) const {
    if (J < 1) throw std::invalid_argument("partition_residual: J must be >= 1");
    double s = phi(xnorm);
    for (int j = 1; j <= J; ++j) s += psi_j(j, xnorm);
    return s - phi(std::ldexp(xnorm, -J));
}

}  // namespace specloc
