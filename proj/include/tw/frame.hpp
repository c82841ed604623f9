#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tw/roi.hpp"
#include "tw/time.hpp"

namespace tw {

/// Detection range of the deployed cameras; frames outside it are rejected.
struct SensorRange {
    double lo_c = -20.0;
    double hi_c = 550.0;
};

/// A timestamped grid of temperatures in degrees Celsius, row-major.
/// Values are stored at the 32-bit precision of the on-disk format.
struct ThermalFrame {
    int width = 0;
    int height = 0;
    Timestamp timestamp = 0;
    std::vector<float> values;

    float at(int row, int col) const {
        return values[static_cast<size_t>(row) * static_cast<size_t>(width) +
                      static_cast<size_t>(col)];
    }
    size_t pixel_count() const { return values.size(); }
};

/// Per-pixel ROI labeling for one camera scene. Labels are ROI ids 0..9
/// (0 = unassigned). Regions a camera cannot see must be declared absent in
/// the sidecar so that a silently empty mask is distinguishable from a
/// mislabeled one.
struct RoiMaskSet {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> labels;
    std::vector<int> present;  // ids with >= 1 pixel, ascending
    std::vector<int> absent;   // ids declared absent, ascending

    bool has_roi(int id) const;
};

// .tfr frame files: little-endian, magic "TFRM", u16 version (=1), u32 width,
// u32 height, 19-byte ASCII `yyyy-MM-dd HH:MM:SS`, then width*height float32
// values row-major. A per-directory frames.idx maps on-disk names back to the
// original timestamp string.

ThermalFrame read_frame(const std::filesystem::path& path, SensorRange range = {});

/// Writes `<dir>/<yyyy-MM-ddTHH-MM-SS>.tfr` and appends to `<dir>/frames.idx`.
/// Returns the file path. Throws Errc::duplicate_timestamp if the name is taken.
std::filesystem::path write_frame(const ThermalFrame& frame, const std::filesystem::path& dir);

/// Mask files are binary PGM (P5, maxval 255) whose pixel value is the ROI id,
/// with a `<path>.rois` sidecar: lines `<id> <label>` for visible regions and
/// `absent <label>` for declared-absent ones.
RoiMaskSet read_mask(const std::filesystem::path& pgm_path);
void write_mask(const RoiMaskSet& mask, const std::filesystem::path& pgm_path);

/// Values at pixels labeled `roi`, in row-major order.
std::vector<float> roi_pixels(const ThermalFrame& frame, const RoiMaskSet& mask, int roi);

}  // namespace tw
