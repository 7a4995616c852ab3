#ifndef SPECLOC_CUTOFF_HPP
#define SPECLOC_CUTOFF_HPP

#include <stdexcept>
#include <string>

namespace specloc {

/// Transition profile of the radial cutoff on [inner, outer].
///   smooth_exp_step : C-infinity step s(u) = B(u)/(B(u)+B(1-u)), B(u)=e^{-1/u}
///                     (default; all derivatives vanish at the endpoints)
///   poly_c4_step    : degree-9 polynomial step, C^4 at the endpoints
///                     (alternative with plain power-law transform decay)
enum class TransitionProfile { smooth_exp_step, poly_c4_step };

TransitionProfile transition_profile_from_name(const std::string& name);
std::string transition_profile_name(TransitionProfile p);

/// Smooth monotone step: exactly 0 for u <= 0, exactly 1 for u >= 1.
double smooth_step(TransitionProfile profile, double u);

/// Radial cutoff family with localization radius r in (0, 3):
///   inner a = (3-r)/3, outer b = 2(3-r)/3 = 2a,
///   phi(t) = 1 for t <= a, 0 for t >= b, smooth monotone in between,
///   psi(x) = phi(|x|) - phi(2|x|),  psi_j(x) = psi(x / 2^j).
/// phi is squeezed between the indicators of [0,a] and [0,b]; the family
/// telescopes: phi(|x|) + sum_{j=1..J} psi_j(x) = phi(|x|/2^J) identically.
struct CutoffFamily {
    double r;
    TransitionProfile profile;

    explicit CutoffFamily(double r_,
                          TransitionProfile p = TransitionProfile::smooth_exp_step)
        : r(r_), profile(p) {
        if (!(r > 0 && r < 3))
            throw std::invalid_argument("CutoffFamily: r must lie in (0, 3)");
    }

    double inner() const { return (3.0 - r) / 3.0; }   // plateau edge a
    double outer() const { return 2.0 * (3.0 - r) / 3.0; }  // support edge b

    double phi(double t) const;
    double psi(double xnorm) const;             // phi(s) - phi(2s)
    double psi_j(int j, double xnorm) const;    // phi(s/2^j) - phi(s/2^{j-1})

    /// phi(|x|) + sum_{j=1..J} psi_j(x) - phi(|x|/2^J); identically 0 up to
    /// floating cancellation.
    double partition_residual(double xnorm, int J) const;
};

}  // namespace specloc

#endif
