#ifndef SPECLOC_RADIAL_TABLE_HPP
#define SPECLOC_RADIAL_TABLE_HPP

#include <string>
#include <vector>

#include "specloc/cutoff.hpp"

namespace specloc {

struct RadialTableParams {
    double step = 1.0 / 128.0;  // table spacing in rho
    double rho_max = 2048.0;    // table range
    double quad_step = 2e-4;    // radial quadrature step (dims >= 2)
    std::size_t max_points = std::size_t{1} << 22;
};

/// Radial profile of the N-dimensional Fourier transform of psi, sampled at
/// rho_q = q * step.  psi is real, radial and even, so the transform is real
/// and radial; values stores the (signed) real profile.
struct RadialTable {
    int dims = 1;
    double step = 0;
    std::vector<double> values;

    double rho_max() const { return step * static_cast<double>(values.size() - 1); }

    /// psi-hat at radius rho (linear interpolation, even extension; 0 beyond
    /// the table range).
    double value(double rho) const;

    /// Dilation identity: transform of psi_j at radius rho equals
    /// 2^{j N} psi-hat(2^j rho).
    double value_j(int j, double rho) const;

    /// Integral of |psi-hat| over the N-dimensional region {|y| > u0}
    /// (trapezoid on the table with the surface-measure factor of dims).
    double abs_tail_integral(double u0) const;

    /// Two-column CSV: rho, psi_hat_real.
    void export_csv(const std::string& path) const;
};

/// Tabulate the radial transform profile of psi = phi(|.|) - phi(2|.|).
///
/// dims == 1 embeds psi on a long 1-d grid (period 2*pi/step, fine enough to
/// keep psi's support within a margin of at least 4x its outer radius and to
/// resolve its transitions) and runs one FFT.  dims == 2 and 3 evaluate the
/// equivalent radial reduction of the same transform by direct quadrature
/// (Bessel J0 kernel for N=2, spherical sine kernel for N=3); embedding at the
/// required resolution would exceed any sane point budget.
RadialTable tabulate_psi_hat(const CutoffFamily& fam, int dims,
                             const RadialTableParams& params = {});

}  // namespace specloc

#endif
