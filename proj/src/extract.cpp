#include "tw/extract.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "tw/error.hpp"

namespace tw {

bool TemperatureSeries::has_gaps() const { return !gap_indices().empty(); }

std::vector<size_t> TemperatureSeries::gap_indices() const {
    std::vector<size_t> gaps;
    const double limit = 1.5 * static_cast<double>(cadence_minutes) * kSecondsPerMinute;
    for (size_t i = 1; i < samples.size(); ++i)
        if (static_cast<double>(samples[i].first - samples[i - 1].first) > limit) gaps.push_back(i);
    return gaps;
}

double roi_temperature(std::span<const float> pixels, double top_fraction) {
    if (pixels.empty()) raise(Errc::empty_region, "no pixels to extract from");
    if (!(top_fraction > 0.0) || top_fraction > 1.0)
        raise(Errc::bad_config, "top_fraction must be in (0, 1]");

    // ceil with a tiny slack so that exact products like 0.05 * 100 do not
    // round up through floating-point representation error.
    const double raw = top_fraction * static_cast<double>(pixels.size());
    size_t k = static_cast<size_t>(std::ceil(raw - 1e-9));
    k = std::clamp<size_t>(k, 1, pixels.size());

    std::vector<float> sorted(pixels.begin(), pixels.end());
    std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k),
                      sorted.end(), std::greater<float>());
    double sum = 0.0;
    for (size_t i = 0; i < k; ++i) sum += static_cast<double>(sorted[i]);
    return sum / static_cast<double>(k);
}

ExtractionResult extract_all(const ThermalFrame& frame, const RoiMaskSet& masks,
                             double top_fraction, Exec exec) {
    if (frame.width != masks.width || frame.height != masks.height)
        raise(Errc::dimension_mismatch, "frame and mask dimensions differ");

    const int n_rois = static_cast<int>(masks.present.size());
    std::vector<double> temps(static_cast<size_t>(n_rois));
    std::vector<std::uint8_t> missing(static_cast<size_t>(n_rois), 0);

#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (int i = 0; i < n_rois; ++i) {
        const int roi = masks.present[static_cast<size_t>(i)];
        const auto pixels = roi_pixels(frame, masks, roi);
        if (pixels.empty())
            missing[static_cast<size_t>(i)] = 1;
        else
            temps[static_cast<size_t>(i)] = roi_temperature(pixels, top_fraction);
    }

    ExtractionResult result;
    result.sample.timestamp = frame.timestamp;
    for (int i = 0; i < n_rois; ++i) {
        const int roi = masks.present[static_cast<size_t>(i)];
        if (missing[static_cast<size_t>(i)])
            result.missing_rois.push_back(roi);
        else
            result.sample.temps[roi] = temps[static_cast<size_t>(i)];
    }
    if (result.sample.temps.empty()) raise(Errc::all_regions_empty, "no ROI produced a value");
    return result;
}

}  // namespace tw
