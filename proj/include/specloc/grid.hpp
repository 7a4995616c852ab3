#ifndef SPECLOC_GRID_HPP
#define SPECLOC_GRID_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace specloc {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Hard ceiling on total lattice points (n^dims) for any grid.
inline constexpr std::size_t kMaxGridPoints = std::size_t{1} << 24;

/// Periodized cube [-L/2, L/2)^N sampled with n points per axis.
///
/// Conventions (used everywhere, bit-exact):
///   storage        row-major over axes, axis index i in [0, n)
///   centered index k = i - n/2, k in [-n/2, n/2)
///   space lattice  x_k = k * h,          h  = L / n
///   freq  lattice  xi_k = k * (2*pi/L)
struct GridSpec {
    int dims = 1;       // N, 1..3
    int n = 4;          // samples per axis, even, >= 4
    double extent = 1;  // period L

    GridSpec(int dims_, int n_, double extent_)
        : dims(dims_), n(n_), extent(extent_) {
        if (dims < 1 || dims > 3)
            throw std::invalid_argument("GridSpec: dims must be 1, 2 or 3");
        if (n < 4 || n % 2 != 0)
            throw std::invalid_argument("GridSpec: n must be even and >= 4");
        if (!(extent > 0))
            throw std::invalid_argument("GridSpec: extent must be positive");
        std::size_t total = 1;
        for (int d = 0; d < dims; ++d) {
            total *= static_cast<std::size_t>(n);
            if (total > kMaxGridPoints)
                throw std::length_error("GridSpec: n^dims exceeds the point cap");
        }
    }

    double spacing() const { return extent / n; }          // h
    double freq_step() const { return 2.0 * kPi / extent; }  // d(xi)

    std::size_t point_count() const {
        std::size_t total = 1;
        for (int d = 0; d < dims; ++d) total *= static_cast<std::size_t>(n);
        return total;
    }

    int centered(int axis_index) const { return axis_index - n / 2; }
    double coord(int axis_index) const { return centered(axis_index) * spacing(); }
    double freq(int axis_index) const { return centered(axis_index) * freq_step(); }

    // Largest |xi|^2 on the lattice (attained at the corner k = (-n/2, ..)).
    double max_freq_norm_sq() const {
        double f = freq_step() * (n / 2);
        return f * f * dims;
    }

    std::array<int, 3> unflatten(std::size_t flat) const {
        std::array<int, 3> idx{0, 0, 0};
        for (int d = dims - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(flat % static_cast<std::size_t>(n));
            flat /= static_cast<std::size_t>(n);
        }
        return idx;
    }

    std::size_t flatten(const std::array<int, 3>& idx) const {
        std::size_t flat = 0;
        for (int d = 0; d < dims; ++d)
            flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(idx[d]);
        return flat;
    }

    // |x|^2 of the lattice point with flat index `flat`.
    double coord_norm_sq(std::size_t flat) const {
        auto idx = unflatten(flat);
        double s = 0;
        for (int d = 0; d < dims; ++d) {
            double c = coord(idx[d]);
            s += c * c;
        }
        return s;
    }

    // Integer |k|^2 of the frequency lattice point (exact shell identifier).
    long long freq_index_norm_sq(std::size_t flat) const {
        auto idx = unflatten(flat);
        long long s = 0;
        for (int d = 0; d < dims; ++d) {
            long long k = centered(idx[d]);
            s += k * k;
        }
        return s;
    }

    bool operator==(const GridSpec& o) const {
        return dims == o.dims && n == o.n && extent == o.extent;
    }
};

}  // namespace specloc

#endif
