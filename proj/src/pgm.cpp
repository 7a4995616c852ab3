#include "specloc/pgm.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace specloc {

namespace {

HeatmapScale write_p5(const std::vector<double>& vals, int width, int height,
                      const std::string& path) {
    double lo = vals.empty() ? 0 : vals[0], hi = lo;
    for (double v : vals) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_heatmap: cannot open " + path);
    out << "P5\n" << width << ' ' << height << "\n255\n";
    double span = hi - lo;
    for (double v : vals) {
        double t = span > 0 ? (v - lo) / span : 0.0;
        auto byte = static_cast<std::uint8_t>(std::lround(255.0 * t));
        out.put(static_cast<char>(byte));
    }
    if (!out) throw std::runtime_error("emit_heatmap: write failed for " + path);
    return {lo, hi};
}

}  // namespace

HeatmapScale emit_heatmap(const ScalarField& field, const SliceSpec& slice,
                          const std::string& path) {
    const GridSpec& g = field.spec;
    const int n = g.n;
    std::vector<double> vals;
    int width = n, height = 1;
    if (g.dims == 1) {
        vals.assign(field.values.begin(), field.values.end());
    } else if (g.dims == 2) {
        height = n;
        vals = field.values;  // row-major (axis0, axis1) already
    } else {
        if (slice.axis < 0 || slice.axis > 2)
            throw std::invalid_argument("emit_heatmap: slice axis out of range");
        int index = slice.index < 0 ? n / 2 : slice.index;
        if (index < 0 || index >= n)
            throw std::invalid_argument("emit_heatmap: slice index out of range");
        height = n;
        vals.resize(static_cast<std::size_t>(n) * n);
        std::size_t p = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                std::array<int, 3> idx{};
                int axes[2];
                int w = 0;
                for (int d = 0; d < 3; ++d)
                    if (d != slice.axis) axes[w++] = d;
                idx[axes[0]] = a;
                idx[axes[1]] = b;
                idx[slice.axis] = index;
                vals[p++] = field.values[g.flatten(idx)];
            }
    }
    return write_p5(vals, width, height, path);
}

HeatmapScale emit_heatmap(const SpatialField& field, const SliceSpec& slice,
                          const std::string& path) {
    ScalarField mag{field.spec, std::vector<double>(field.samples.size())};
    for (std::size_t i = 0; i < field.samples.size(); ++i)
        mag.values[i] = std::abs(field.samples[i]);
    return emit_heatmap(mag, slice, path);
}

}  // namespace specloc
