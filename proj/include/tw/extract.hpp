#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tw/frame.hpp"
#include "tw/parallel.hpp"
#include "tw/time.hpp"

namespace tw {

/// One operating-temperature reading per visible ROI, keyed by ROI id.
struct TemperatureSample {
    Timestamp timestamp = 0;
    std::map<int, double> temps;
};

struct ExtractionResult {
    TemperatureSample sample;
    std::vector<int> missing_rois;  // ROIs in the mask with no pixels extracted
};

/// Per-ROI time series at a nominal cadence. Timestamps are strictly
/// increasing; a gap is any interval longer than 1.5x the cadence.
struct TemperatureSeries {
    std::string camera;
    int roi = 0;
    int cadence_minutes = 0;
    std::vector<std::pair<Timestamp, double>> samples;

    bool has_gaps() const;
    /// Indices i where samples[i] follows a gap.
    std::vector<size_t> gap_indices() const;
};

/// Operating temperature of a region: arithmetic mean of the top
/// ceil(top_fraction * N) values (at least one pixel). Selection is by value,
/// so ties cannot make the result depend on pixel order.
double roi_temperature(std::span<const float> pixels, double top_fraction = 0.05);

ExtractionResult extract_all(const ThermalFrame& frame, const RoiMaskSet& masks,
                             double top_fraction = 0.05, Exec exec = Exec::parallel);

}  // namespace tw
