#pragma once

#include <cstdint>
#include <vector>

#include "tw/quantize.hpp"
#include "tw/time.hpp"

namespace tw {

struct MserParams {
    int delta = 2;                    // stability probe distance in quantization levels
    int min_area = 8;                 // pixels
    double max_area_fraction = 0.75;  // of the whole frame
    double max_variation = 0.25;
};

struct SegmentedRegion {
    int class_id = 0;
    int region_id = 0;  // raster order of the region's first pixel, per class
    std::int64_t pixel_count = 0;
    int min_row = 0, min_col = 0, max_row = 0, max_col = 0;
};

/// Longitudinal record of segmented-region sizes for one frame; deviations
/// of these series over time flag scene changes that are not purely thermal.
struct RegionSizeSample {
    Timestamp timestamp = 0;

    struct Entry {
        int class_id;
        int region_id;
        std::int64_t pixel_count;
    };
    std::vector<Entry> sizes;  // in (class_id, region_id) order
};

/// Extremal-region analysis run independently on each Otsu class.
///
/// Within each 4-connected component of a class, lower level sets are grown
/// level by level and the most stable ones (local minima of the MSER
/// variation, at most `max_variation`) are kept; selected regions are
/// disjoint. On classes that are piecewise constant in level this reduces
/// exactly to 4-connected component labeling of the class, which is the
/// behavior the region-size series relies on for rendered scenes.
std::vector<SegmentedRegion> mser_regions(const ThermalFrame& frame,
                                          const QuantizationResult& quant,
                                          const MserParams& params = {},
                                          Exec exec = Exec::parallel);

RegionSizeSample region_size_record(const std::vector<SegmentedRegion>& regions,
                                    Timestamp timestamp);

}  // namespace tw
