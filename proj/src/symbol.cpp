#include "specloc/symbol.hpp"

#include <cmath>

namespace specloc {

double pow_int(double x, int m) {
    double r = 1.0;
    for (int i = 0; i < m; ++i) r *= x;
    return r;
}

cplx evaluate_symbol_radial(const SymbolParams& p, double xi_norm_sq) {
    double u = pow_int(xi_norm_sq, p.m_order) / p.lambda;
    if (u >= 1.0) return 0.0;
    if (p.tau == 0.0) return 1.0;
    return std::polar(1.0, p.tau * std::log1p(-u));
}

cplx evaluate_symbol(const SymbolParams& p, std::span<const double> xi) {
    double s = 0;
    for (double c : xi) s += c * c;
    return evaluate_symbol_radial(p, s);
}

SpectralField apply_multiplier(const SymbolParams& p, const SpectralField& g) {
    const GridSpec& spec = g.spec;
    std::vector<cplx> out(g.coeffs.size());
    const double step_sq = spec.freq_step() * spec.freq_step();
    for (std::size_t i = 0; i < out.size(); ++i) {
        double nsq = step_sq * static_cast<double>(spec.freq_index_norm_sq(i));
        out[i] = evaluate_symbol_radial(p, nsq) * g.coeffs[i];
    }
    return SpectralField(spec, std::move(out));
}

}  // namespace specloc
