#include "specloc/field.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace specloc {

static void check_payload(const GridSpec& spec, const std::vector<cplx>& v,
                          const char* what) {
    if (v.size() != spec.point_count())
        throw std::invalid_argument(std::string(what) + ": value count != n^dims");
    for (const cplx& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument(std::string(what) + ": non-finite value");
}

SpatialField::SpatialField(GridSpec s, std::vector<cplx> v)
    : spec(s), samples(std::move(v)) {
    check_payload(spec, samples, "SpatialField");
}

SpatialField SpatialField::zero(const GridSpec& s) {
    return SpatialField(s, std::vector<cplx>(s.point_count()));
}

SpectralField::SpectralField(GridSpec s, std::vector<cplx> v)
    : spec(s), coeffs(std::move(v)) {
    check_payload(spec, coeffs, "SpectralField");
}

SpectralField SpectralField::zero(const GridSpec& s) {
    return SpectralField(s, std::vector<cplx>(s.point_count()));
}

static double weighted_norm(const std::vector<cplx>& v, double cell) {
    double s = 0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s * cell);
}

double l2_norm(const SpatialField& f) {
    return weighted_norm(f.samples, std::pow(f.spec.spacing(), f.spec.dims));
}

double l2_norm(const SpectralField& g) {
    return weighted_norm(g.coeffs, std::pow(g.spec.freq_step(), g.spec.dims));
}

template <class V, class Abs2>
static double restricted_l2(const GridSpec& spec, const V& vals,
                            const RadialRegion& region, Abs2 abs2) {
    if (region.rho < 0) throw std::invalid_argument("restricted_l2_norm: rho < 0");
    double cell = std::pow(spec.spacing(), spec.dims);
    double s = 0;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (region.contains(std::sqrt(spec.coord_norm_sq(i)))) s += abs2(vals[i]);
    return std::sqrt(s * cell);
}

double restricted_l2_norm(const SpatialField& f, const RadialRegion& region) {
    return restricted_l2(f.spec, f.samples, region,
                         [](const cplx& z) { return std::norm(z); });
}

double restricted_l2_norm(const ScalarField& f, const RadialRegion& region) {
    return restricted_l2(f.spec, f.values, region,
                         [](double v) { return v * v; });
}

double restricted_sup_norm(const SpatialField& f, const RadialRegion& region) {
    if (region.rho < 0) throw std::invalid_argument("restricted_sup_norm: rho < 0");
    double s = 0;
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        if (region.contains(std::sqrt(f.spec.coord_norm_sq(i))))
            s = std::max(s, std::abs(f.samples[i]));
    return s;
}

// --- serialization ----------------------------------------------------------

static_assert(std::endian::native == std::endian::little,
              "field fixtures assume a little-endian host");

namespace {
constexpr char kMagic[8] = {'S', 'L', 'O', 'C', 'F', 'L', 'D', '1'};

struct Header {
    char magic[8];
    std::uint32_t dims;
    std::uint32_t n;
    double extent;
    std::uint32_t kind;  // 0 spatial, 1 spectral
    std::uint32_t reserved;
};
static_assert(sizeof(Header) == 32, "fixture header must be 32 bytes");

void write_file(const GridSpec& spec, const std::vector<cplx>& vals,
                std::uint32_t kind, const std::string& path) {
    Header h{};
    std::memcpy(h.magic, kMagic, 8);
    h.dims = static_cast<std::uint32_t>(spec.dims);
    h.n = static_cast<std::uint32_t>(spec.n);
    h.extent = spec.extent;
    h.kind = kind;
    h.reserved = 0;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_field: cannot open " + path);
    out.write(reinterpret_cast<const char*>(&h), sizeof h);
    for (const cplx& z : vals) {
        float re = static_cast<float>(z.real());
        float im = static_cast<float>(z.imag());
        out.write(reinterpret_cast<const char*>(&re), 4);
        out.write(reinterpret_cast<const char*>(&im), 4);
    }
    if (!out) throw std::runtime_error("save_field: write failed for " + path);
}

std::pair<GridSpec, std::vector<cplx>> read_file(const std::string& path,
                                                 std::uint32_t want_kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_field: cannot open " + path);
    Header h{};
    in.read(reinterpret_cast<char*>(&h), sizeof h);
    if (!in || std::memcmp(h.magic, kMagic, 8) != 0)
        throw std::runtime_error("load_field: bad magic in " + path);
    if (h.kind != want_kind)
        throw std::runtime_error("load_field: field kind mismatch in " + path);
    GridSpec spec(static_cast<int>(h.dims), static_cast<int>(h.n), h.extent);
    std::vector<cplx> vals(spec.point_count());
    for (cplx& z : vals) {
        float re = 0, im = 0;
        in.read(reinterpret_cast<char*>(&re), 4);
        in.read(reinterpret_cast<char*>(&im), 4);
        z = cplx(re, im);
    }
    if (!in) throw std::runtime_error("load_field: truncated file " + path);
    return {spec, std::move(vals)};
}
}  // namespace

void save_field(const SpatialField& f, const std::string& path) {
    write_file(f.spec, f.samples, 0, path);
}

void save_field(const SpectralField& g, const std::string& path) {
    write_file(g.spec, g.coeffs, 1, path);
}

SpatialField load_spatial_field(const std::string& path) {
    auto [spec, vals] = read_file(path, 0);
    return SpatialField(spec, std::move(vals));
}

SpectralField load_spectral_field(const std::string& path) {
    auto [spec, vals] = read_file(path, 1);
    return SpectralField(spec, std::move(vals));
}

}  // namespace specloc
