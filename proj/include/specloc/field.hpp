#ifndef SPECLOC_FIELD_HPP
#define SPECLOC_FIELD_HPP

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "specloc/grid.hpp"

namespace specloc {

using cplx = std::complex<double>;

/// Complex samples on the space lattice; samples[flat] = f(x_k), k = i - n/2.
struct SpatialField {
    GridSpec spec;
    std::vector<cplx> samples;

    SpatialField(GridSpec s, std::vector<cplx> v);
    static SpatialField zero(const GridSpec& s);
};

/// Complex coefficients on the frequency lattice; coeffs[flat] = F(xi_k).
struct SpectralField {
    GridSpec spec;
    std::vector<cplx> coeffs;

    SpectralField(GridSpec s, std::vector<cplx> v);
    static SpectralField zero(const GridSpec& s);
};

/// Real-valued field on the space lattice (maximal functions, heatmaps).
struct ScalarField {
    GridSpec spec;
    std::vector<double> values;
};

/// Radial region |x| <= rho (inside) or |x| >= rho (outside).
/// Membership uses weak inequalities unless strict is set.
struct RadialRegion {
    enum class Kind { inside, outside };
    Kind kind = Kind::inside;
    double rho = 0;
    bool strict = false;

    static RadialRegion inside(double rho, bool strict = false) {
        return {Kind::inside, rho, strict};
    }
    static RadialRegion outside(double rho, bool strict = false) {
        return {Kind::outside, rho, strict};
    }
    bool contains(double xnorm) const {
        if (kind == Kind::inside) return strict ? xnorm < rho : xnorm <= rho;
        return strict ? xnorm > rho : xnorm >= rho;
    }
};

// Quadrature-weighted L2 norms: space side carries weight h^N per sample,
// frequency side (2*pi/L)^N per coefficient.  With the transform convention of
// transform.hpp these two norms satisfy Parseval exactly in the discrete model.
double l2_norm(const SpatialField& f);
double l2_norm(const SpectralField& g);

/// sqrt( sum_{x_k in region} |f(x_k)|^2 h^N )
double restricted_l2_norm(const SpatialField& f, const RadialRegion& region);
double restricted_l2_norm(const ScalarField& f, const RadialRegion& region);

/// max_{x_k in region} |f(x_k)| (0 when the region holds no lattice point)
double restricted_sup_norm(const SpatialField& f, const RadialRegion& region);

// --- fixture serialization -------------------------------------------------
// 32-byte header: magic "SLOCFLD1" | u32 dims | u32 n | f64 extent
//                 | u32 kind (0 = spatial, 1 = spectral) | u32 reserved(0)
// followed by n^dims little-endian complex64 (float32 re, float32 im) values
// in canonical storage order.  float32 payload: fixtures only, not full
// precision.
void save_field(const SpatialField& f, const std::string& path);
void save_field(const SpectralField& g, const std::string& path);
SpatialField load_spatial_field(const std::string& path);
SpectralField load_spectral_field(const std::string& path);

}  // namespace specloc

#endif
