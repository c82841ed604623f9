#include "tw/quantize.hpp"

#include <algorithm>

#include "tw/error.hpp"

namespace tw {

std::vector<std::uint16_t> quantize(const ThermalFrame& frame, int n_levels,
                                    std::optional<std::pair<double, double>> range, Exec exec) {
    if (n_levels < 2 || n_levels > 65536) raise(Errc::bad_config, "n_levels out of range");
    double lo, hi;
    if (range) {
        lo = range->first;
        hi = range->second;
    } else {
        const auto [mn, mx] = std::minmax_element(frame.values.begin(), frame.values.end());
        lo = *mn;
        hi = *mx;
    }
    if (!(hi > lo)) hi = lo + 1.0;  // constant frame: everything lands on level 0

    const double scale = static_cast<double>(n_levels) / (hi - lo);
    const auto n = static_cast<std::int64_t>(frame.values.size());
    std::vector<std::uint16_t> levels(frame.values.size());

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (std::int64_t i = 0; i < n; ++i) {
        const double v = frame.values[static_cast<size_t>(i)];
        int level = static_cast<int>((v - lo) * scale);
        level = std::clamp(level, 0, n_levels - 1);
        levels[static_cast<size_t>(i)] = static_cast<std::uint16_t>(level);
    }
    return levels;
}

std::vector<std::int64_t> histogram(std::span<const std::uint16_t> levels, int n_levels,
                                    Exec exec) {
    std::vector<std::int64_t> hist(static_cast<size_t>(n_levels), 0);
    const auto n = static_cast<std::int64_t>(levels.size());

    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            std::vector<std::int64_t> local(static_cast<size_t>(n_levels), 0);
#pragma omp for schedule(static) nowait
            for (std::int64_t i = 0; i < n; ++i) ++local[levels[static_cast<size_t>(i)]];
#pragma omp critical(tw_histogram_merge)
            for (int l = 0; l < n_levels; ++l) hist[static_cast<size_t>(l)] += local[static_cast<size_t>(l)];
        }
    } else {
        for (std::int64_t i = 0; i < n; ++i) ++hist[levels[static_cast<size_t>(i)]];
    }
    return hist;
}

std::vector<std::uint8_t> classify_levels(std::span<const std::uint16_t> levels,
                                          std::span<const int> thresholds, Exec exec) {
    std::vector<std::uint8_t> classes(levels.size());
    const auto n = static_cast<std::int64_t>(levels.size());

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (std::int64_t i = 0; i < n; ++i) {
        const int level = levels[static_cast<size_t>(i)];
        std::uint8_t c = 0;
        for (int k : thresholds) {
            if (level <= k) break;
            ++c;
        }
        classes[static_cast<size_t>(i)] = c;
    }
    return classes;
}

}  // namespace tw
