#pragma once

#include <array>
#include <string>
#include <string_view>

namespace tw {

/// The nine monitored transformer regions. Mask pixels use these ids; 0 is
/// reserved for unassigned pixels.
constexpr int kNumRois = 9;
constexpr int kRoiUnassigned = 0;
constexpr int kRoiBackground = 9;

constexpr std::array<std::string_view, kNumRois + 1> kRoiLabels = {
    "unassigned", "in_1", "in_2", "in_3", "out_1", "out_2", "out_3", "out_4", "body",
    "background"};

inline std::string_view roi_label(int id) {
    return (id >= 0 && id <= kNumRois) ? kRoiLabels[static_cast<size_t>(id)] : "invalid";
}

/// Returns 0 when the label is unknown.
inline int roi_id(std::string_view label) {
    for (int i = 1; i <= kNumRois; ++i)
        if (kRoiLabels[static_cast<size_t>(i)] == label) return i;
    return 0;
}

}  // namespace tw
