#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tw/quantize.hpp"

namespace tw {

struct OtsuThresholds {
    std::vector<int> thresholds;  // k_1 < ... < k_{n-1}
    double separability = 0.0;
};

/// Exact multiclass Otsu over a level histogram: dynamic programming over
/// prefix sums maximizes sigma_B^2 = sum_i w_i (mu_i - mu_T)^2. Ties are
/// broken toward the lexicographically smallest threshold vector.
/// Throws Errc::insufficient_contrast when the histogram has fewer occupied
/// levels than classes.
OtsuThresholds otsu_from_histogram(std::span<const std::int64_t> hist, int n_classes);

/// Quantizes the frame (linear binning over `range`, defaulting to the
/// frame's own [min, max]) and thresholds the level histogram.
QuantizationResult otsu_multiclass(const ThermalFrame& frame, int n_classes, int n_levels = 256,
                                   std::optional<std::pair<double, double>> range = std::nullopt,
                                   Exec exec = Exec::parallel);

}  // namespace tw
