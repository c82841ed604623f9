#include "tw/otsu.hpp"

#include <limits>

#include "tw/error.hpp"

namespace tw {

namespace {

struct Prefix {
    std::vector<double> w;   // cumulative probability
    std::vector<double> wl;  // cumulative probability-weighted level
    double mu_total = 0.0;
};

Prefix build_prefix(std::span<const std::int64_t> hist) {
    std::int64_t total = 0;
    for (auto c : hist) total += c;
    Prefix p;
    p.w.resize(hist.size());
    p.wl.resize(hist.size());
    double w = 0.0, wl = 0.0;
    for (size_t l = 0; l < hist.size(); ++l) {
        const double prob = static_cast<double>(hist[l]) / static_cast<double>(total);
        w += prob;
        wl += prob * static_cast<double>(l);
        p.w[l] = w;
        p.wl[l] = wl;
    }
    p.mu_total = wl;
    return p;
}

// Contribution w * (mu - mu_T)^2 of the class covering levels [a, b].
// Kept as a single expression so the exhaustive reference in the test suite
// can reproduce it operation-for-operation.
double class_term(const Prefix& p, int a, int b) {
    const double w = p.w[static_cast<size_t>(b)] - (a > 0 ? p.w[static_cast<size_t>(a - 1)] : 0.0);
    if (w <= 0.0) return 0.0;
    const double mu =
        (p.wl[static_cast<size_t>(b)] - (a > 0 ? p.wl[static_cast<size_t>(a - 1)] : 0.0)) / w;
    const double d = mu - p.mu_total;
    return w * d * d;
}

}  // namespace

OtsuThresholds otsu_from_histogram(std::span<const std::int64_t> hist, int n_classes) {
    const int L = static_cast<int>(hist.size());
    if (n_classes < 2) raise(Errc::bad_config, "need at least 2 classes");
    if (L < n_classes) raise(Errc::bad_config, "fewer levels than classes");

    int occupied = 0;
    for (auto c : hist) occupied += c > 0;
    if (occupied < n_classes)
        raise(Errc::insufficient_contrast, std::to_string(occupied) +
                                               " occupied levels cannot form " +
                                               std::to_string(n_classes) + " classes");

    const Prefix prefix = build_prefix(hist);

    // score[c][k]: best total for classes 1..c covering levels [0..k].
    // vec[c][k]: lexicographically smallest threshold vector achieving it.
    // Scores accumulate left to right over classes, so the optimum value is
    // bit-identical to an exhaustive left-associated evaluation.
    const double kNegInf = -std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> score(static_cast<size_t>(n_classes) + 1,
                                           std::vector<double>(static_cast<size_t>(L), kNegInf));
    std::vector<std::vector<std::vector<int>>> vec(
        static_cast<size_t>(n_classes) + 1, std::vector<std::vector<int>>(static_cast<size_t>(L)));

    for (int k = 0; k < L; ++k) score[1][static_cast<size_t>(k)] = class_term(prefix, 0, k);

    for (int c = 2; c <= n_classes; ++c) {
        for (int k = c - 1; k < L; ++k) {
            double best = kNegInf;
            std::vector<int> best_vec;
            for (int j = c - 2; j < k; ++j) {
                const double prev = score[static_cast<size_t>(c - 1)][static_cast<size_t>(j)];
                if (prev == kNegInf) continue;
                const double cand = prev + class_term(prefix, j + 1, k);
                if (cand > best) {
                    best = cand;
                    best_vec = vec[static_cast<size_t>(c - 1)][static_cast<size_t>(j)];
                    best_vec.push_back(j);
                } else if (cand == best) {
                    std::vector<int> v = vec[static_cast<size_t>(c - 1)][static_cast<size_t>(j)];
                    v.push_back(j);
                    if (v < best_vec) best_vec = std::move(v);
                }
            }
            score[static_cast<size_t>(c)][static_cast<size_t>(k)] = best;
            vec[static_cast<size_t>(c)][static_cast<size_t>(k)] = std::move(best_vec);
        }
    }

    OtsuThresholds out;
    out.separability = score[static_cast<size_t>(n_classes)][static_cast<size_t>(L - 1)];
    out.thresholds = vec[static_cast<size_t>(n_classes)][static_cast<size_t>(L - 1)];
    return out;
}

QuantizationResult otsu_multiclass(const ThermalFrame& frame, int n_classes, int n_levels,
                                   std::optional<std::pair<double, double>> range, Exec exec) {
    if (n_levels < n_classes) raise(Errc::bad_config, "n_levels < n_classes");

    QuantizationResult result;
    result.n_classes = n_classes;
    result.n_levels = n_levels;
    if (range) {
        result.range_lo = range->first;
        result.range_hi = range->second;
    } else {
        const auto [mn, mx] = std::minmax_element(frame.values.begin(), frame.values.end());
        result.range_lo = *mn;
        result.range_hi = *mx;
    }

    result.levels = quantize(frame, n_levels, std::pair{result.range_lo, result.range_hi}, exec);
    const auto hist = histogram(result.levels, n_levels, exec);
    auto best = otsu_from_histogram(hist, n_classes);
    result.thresholds = std::move(best.thresholds);
    result.separability = best.separability;
    result.labelmap = classify_levels(result.levels, result.thresholds, exec);
    return result;
}

}  // namespace tw
