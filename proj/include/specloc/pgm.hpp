#ifndef SPECLOC_PGM_HPP
#define SPECLOC_PGM_HPP

#include <string>

#include "specloc/field.hpp"

namespace specloc {

/// Which 2-d plane of a 3-d field to render; ignored for dims <= 2.
struct SliceSpec {
    int axis = 2;    // axis held fixed
    int index = -1;  // -1 = n/2
};

struct HeatmapScale {
    double lo = 0;
    double hi = 0;
};

/// Binary 8-bit P5 graymap of the field magnitude with linear min-max
/// scaling (returned so callers can record it).  dims == 1 renders a 1 x n
/// line; dims == 2 renders rows = first axis, columns = second axis.
HeatmapScale emit_heatmap(const ScalarField& field, const SliceSpec& slice,
                          const std::string& path);
HeatmapScale emit_heatmap(const SpatialField& field, const SliceSpec& slice,
                          const std::string& path);

}  // namespace specloc

#endif
