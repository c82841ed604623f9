#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tw/frame.hpp"
#include "tw/parallel.hpp"

namespace tw {

/// Result of multiclass Otsu thresholding over a quantized frame.
///
/// Thresholds are gray-level cut points k_1 < ... < k_{n-1}; pixel class c
/// covers levels (k_{c-1}, k_c] with implicit k_0 = -1 and k_n = n_levels-1.
/// `separability` is the achieved between-class variance
/// sigma_B^2 = sum_i w_i (mu_i - mu_T)^2 in level units.
struct QuantizationResult {
    int n_classes = 0;
    int n_levels = 0;
    double range_lo = 0.0;  // value mapped to level 0
    double range_hi = 0.0;  // value mapped to level n_levels-1
    std::vector<int> thresholds;
    std::vector<std::uint16_t> levels;   // per-pixel quantized level
    std::vector<std::uint8_t> labelmap;  // per-pixel class id
    double separability = 0.0;
};

/// Linear binning of frame values into n_levels levels over `range`
/// (defaults to the frame's own [min, max]).
std::vector<std::uint16_t> quantize(const ThermalFrame& frame, int n_levels,
                                    std::optional<std::pair<double, double>> range = std::nullopt,
                                    Exec exec = Exec::parallel);

std::vector<std::int64_t> histogram(std::span<const std::uint16_t> levels, int n_levels,
                                    Exec exec = Exec::parallel);

/// Maps each level to its class under the half-open (k_{c-1}, k_c] convention.
std::vector<std::uint8_t> classify_levels(std::span<const std::uint16_t> levels,
                                          std::span<const int> thresholds,
                                          Exec exec = Exec::parallel);

}  // namespace tw
