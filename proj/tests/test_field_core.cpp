#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "specloc/field.hpp"
#include "specloc/transform.hpp"

using namespace specloc;

namespace {

SpatialField random_field(const GridSpec& g, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1p-53 - 0.5; };
    std::vector<cplx> v(g.point_count());
    for (cplx& z : v) z = cplx(uniform(), uniform());
    return SpatialField(g, std::move(v));
}

double rel_l2_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double err = 0, ref = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        err += std::norm(a[i] - b[i]);
        ref += std::norm(b[i]);
    }
    return std::sqrt(err / ref);
}

}  // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridSpec(0, 16, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(4, 16, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(1, 15, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(1, 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(1, 16, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(3, 4096, 1.0), std::length_error);  // > 2^24 points

    GridSpec g(2, 8, 4.0);
    CHECK(g.spacing() == 0.5);
    CHECK(g.point_count() == 64);
    CHECK(g.coord(0) == -2.0);  // k = -n/2
    CHECK(g.coord(4) == 0.0);
    CHECK(g.freq(7) == doctest::Approx(3 * 2 * kPi / 4.0));
    auto idx = g.unflatten(g.flatten({3, 5, 0}));
    CHECK(idx[0] == 3);
    CHECK(idx[1] == 5);
}

TEST_CASE("field validation rejects non-finite samples") {
    GridSpec g(1, 8, 1.0);
    std::vector<cplx> v(8);
    v[3] = cplx(std::nan(""), 0.0);
    CHECK_THROWS_AS(SpatialField(g, v), std::invalid_argument);
    CHECK_THROWS_AS(SpatialField(g, std::vector<cplx>(7)), std::invalid_argument);
}

TEST_CASE("delta input gives a flat spectrum") {
    GridSpec g(1, 32, 8.0);
    auto f = SpatialField::zero(g);
    f.samples[16] = 1.0;  // x = 0
    SpectralField F = forward_transform(f);
    double expected = g.spacing() / std::sqrt(2 * kPi);
    for (const cplx& z : F.coeffs)
        CHECK(std::abs(z) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("gaussian matches its closed-form transform in the central band") {
    GridSpec g(1, 256, 20.0);
    std::vector<cplx> v(g.point_count());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double x = g.coord(static_cast<int>(i));
        v[i] = std::exp(-0.5 * x * x);
    }
    SpectralField F = forward_transform(SpatialField(g, std::move(v)));
    for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
        double xi = g.freq(static_cast<int>(i));
        if (std::abs(xi) > 4.0) continue;
        double expect = std::exp(-0.5 * xi * xi);
        CHECK(std::abs(F.coeffs[i] - expect) <= 1e-6 * expect);
    }
}

TEST_CASE("parseval and round trip on random fields") {
    for (int dims : {1, 2}) {
        GridSpec g(dims, dims == 1 ? 128 : 32, 7.5);
        for (unsigned long long seed : {1ull, 2ull, 3ull}) {
            SpatialField f = random_field(g, seed);
            SpectralField F = forward_transform(f);
            CHECK(std::abs(l2_norm(f) - l2_norm(F)) <= 1e-10 * l2_norm(f));
            SpatialField back = inverse_transform(F);
            CHECK(rel_l2_diff(back.samples, f.samples) <= 1e-10);
        }
    }
}

TEST_CASE("zero field transforms to zero") {
    GridSpec g(2, 8, 3.0);
    SpectralField F = forward_transform(SpatialField::zero(g));
    for (const cplx& z : F.coeffs) CHECK(std::abs(z) == 0.0);
    SpatialField f = inverse_transform(SpectralField::zero(g));
    for (const cplx& z : f.samples) CHECK(std::abs(z) == 0.0);
}

TEST_CASE("single coefficient inverts to the documented exponential") {
    GridSpec g(1, 64, 10.0);
    auto F = SpectralField::zero(g);
    int ki = 40;  // k = 8
    F.coeffs[ki] = 1.0;
    SpatialField f = inverse_transform(F);
    double scale = g.freq_step() / std::sqrt(2 * kPi);
    double xi = g.freq(ki);
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        cplx expect = scale * std::polar(1.0, g.coord(static_cast<int>(i)) * xi);
        CHECK(std::abs(f.samples[i] - expect) <= 1e-12 * scale);
    }
}

TEST_CASE("direct reference agrees with the fast transform") {
    GridSpec g(1, 64, 9.0);
    SpatialField f = random_field(g, 17);
    SpectralField fast = forward_transform(f);
    SpectralField slow = direct_transform_reference(f);
    CHECK(rel_l2_diff(fast.coeffs, slow.coeffs) <= 1e-8);

    GridSpec g2(2, 12, 5.0);
    SpatialField f2 = random_field(g2, 18);
    CHECK(rel_l2_diff(forward_transform(f2).coeffs,
                      direct_transform_reference(f2).coeffs) <= 1e-8);
}

TEST_CASE("direct reference: delta, linearity, cap") {
    GridSpec g(1, 16, 4.0);
    auto delta = SpatialField::zero(g);
    delta.samples[8] = 1.0;
    SpectralField D = direct_transform_reference(delta);
    double expected = g.spacing() / std::sqrt(2 * kPi);
    for (const cplx& z : D.coeffs)
        CHECK(std::abs(z) == doctest::Approx(expected).epsilon(1e-12));

    SpatialField a = random_field(g, 5), b = random_field(g, 6);
    cplx ca(0.7, -0.2), cb(-1.3, 0.4);
    std::vector<cplx> comb(g.point_count());
    for (std::size_t i = 0; i < comb.size(); ++i)
        comb[i] = ca * a.samples[i] + cb * b.samples[i];
    SpectralField lhs = direct_transform_reference(SpatialField(g, comb));
    SpectralField ra = direct_transform_reference(a);
    SpectralField rb = direct_transform_reference(b);
    for (std::size_t i = 0; i < comb.size(); ++i)
        CHECK(std::abs(lhs.coeffs[i] - (ca * ra.coeffs[i] + cb * rb.coeffs[i])) <=
              1e-10 * (std::abs(lhs.coeffs[i]) + 1.0));

    GridSpec big(1, 8192, 1.0);
    CHECK_THROWS_AS(direct_transform_reference(SpatialField::zero(big)),
                    std::length_error);
}

TEST_CASE("restricted l2 norm") {
    GridSpec g(1, 64, 8.0);
    CHECK(restricted_l2_norm(SpatialField::zero(g), RadialRegion::inside(2.0)) == 0.0);

    // f = 1 everywhere, full region: L^{N/2}
    SpatialField ones(g, std::vector<cplx>(g.point_count(), 1.0));
    CHECK(restricted_l2_norm(ones, RadialRegion::inside(g.extent)) ==
          doctest::Approx(std::sqrt(8.0)).epsilon(1e-14));

    // indicator pattern vs a hand-counted lattice sum
    auto f = SpatialField::zero(g);
    int count = 0;
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        double x = g.coord(static_cast<int>(i));
        if (std::abs(x) <= 1.0) {
            f.samples[i] = 2.0;
            ++count;
        }
    }
    double expect = std::sqrt(4.0 * count * g.spacing());
    CHECK(restricted_l2_norm(f, RadialRegion::inside(1.0)) ==
          doctest::Approx(expect).epsilon(1e-14));
    CHECK(restricted_l2_norm(f, RadialRegion::outside(1.0, /*strict=*/true)) == 0.0);
    CHECK_THROWS_AS(restricted_l2_norm(f, RadialRegion::inside(-1.0)),
                    std::invalid_argument);
}

TEST_CASE("fixture serialization round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "specloc_fixture_test";
    fs::create_directories(dir);
    std::string path = (dir / "field.bin").string();

    GridSpec g(2, 8, 6.0);
    SpatialField f = random_field(g, 99);
    save_field(f, path);

    FILE* fp = std::fopen(path.c_str(), "rb");
    REQUIRE(fp != nullptr);
    char magic[8];
    REQUIRE(std::fread(magic, 1, 8, fp) == 8);
    std::fclose(fp);
    CHECK(std::string(magic, 8) == "SLOCFLD1");
    CHECK(fs::file_size(path) == 32 + 8 * g.point_count());

    SpatialField back = load_spatial_field(path);
    CHECK(back.spec == g);
    for (std::size_t i = 0; i < back.samples.size(); ++i)
        CHECK(std::abs(back.samples[i] - f.samples[i]) <= 1e-6);  // float32 payload

    CHECK_THROWS(load_spectral_field(path));  // kind mismatch
    fs::remove_all(dir);
}
