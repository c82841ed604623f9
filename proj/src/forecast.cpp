#include "tw/forecast.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "tw/error.hpp"
#include "tw/store.hpp"

namespace tw {

namespace {

/// Symmetric lagged Gram matrix C(i,j) = sum_{t=p}^{N-1} y[t-i]*y[t-j] for
/// i,j in 0..p, plus the row count. Computed from the first row by the
/// shift identity C(i+1,j+1) = C(i,j) + y[p-1-i]*y[p-1-j] - y[N-1-i]*y[N-1-j],
/// which drops the cost from O(N p^2) to O(N p + p^2). The first-row dot
/// products and the diagonal chains are independent, so the parallel result
/// is bit-identical to the serial one.
Eigen::MatrixXd lagged_gram(const std::vector<double>& y, int p, Exec exec) {
    const auto n = static_cast<std::int64_t>(y.size());
    Eigen::MatrixXd c(p + 1, p + 1);

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int j = 0; j <= p; ++j) {
        double acc = 0.0;
        for (std::int64_t t = p; t < n; ++t)
            acc += y[static_cast<size_t>(t)] * y[static_cast<size_t>(t - j)];
        c(0, j) = acc;
    }

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int d = 0; d <= p; ++d) {
        for (int i = 0; i + 1 <= p && i + d + 1 <= p; ++i) {
            const int j = i + d;
            c(i + 1, j + 1) = c(i, j) +
                              y[static_cast<size_t>(p - 1 - i)] * y[static_cast<size_t>(p - 1 - j)] -
                              y[static_cast<size_t>(n - 1 - i)] * y[static_cast<size_t>(n - 1 - j)];
        }
    }

    for (int i = 0; i <= p; ++i)
        for (int j = 0; j < i; ++j) c(i, j) = c(j, i);
    return c;
}

}  // namespace

ARModel fit(const TemperatureSeries& history, int p, double ridge_lambda, Exec exec) {
    if (p < 1) raise(Errc::bad_config, "lag count must be >= 1");
    const auto n = static_cast<std::int64_t>(history.samples.size());
    const std::int64_t required = p + std::max<std::int64_t>(2LL * p, 64);
    if (n < required)
        raise(Errc::insufficient_history, std::to_string(n) + " samples, need " +
                                              std::to_string(required) + " for p=" +
                                              std::to_string(p));
    if (history.has_gaps())
        raise(Errc::gap_in_training_window, "training slice contains a gap");

    std::vector<double> y(history.samples.size());
    for (size_t i = 0; i < y.size(); ++i) y[i] = history.samples[i].second;

    const double rows = static_cast<double>(n - p);
    const Eigen::MatrixXd c = lagged_gram(y, p, exec);

    // Normal equations for theta = (intercept, phi_1..phi_p). Lag sums are
    // read off the Gram first row shifted into the lag frame.
    Eigen::MatrixXd m(p + 1, p + 1);
    Eigen::VectorXd b(p + 1);
    m(0, 0) = rows;
    b(0) = 0.0;
    for (std::int64_t t = p; t < n; ++t) b(0) += y[static_cast<size_t>(t)];
    std::vector<double> lag_sum(static_cast<size_t>(p) + 1, 0.0);
    for (int i = 1; i <= p; ++i) {
        double acc = 0.0;
        for (std::int64_t t = p; t < n; ++t) acc += y[static_cast<size_t>(t - i)];
        lag_sum[static_cast<size_t>(i)] = acc;
    }
    for (int i = 1; i <= p; ++i) {
        m(0, i) = lag_sum[static_cast<size_t>(i)];
        m(i, 0) = lag_sum[static_cast<size_t>(i)];
        b(i) = c(0, i);
        for (int j = 1; j <= p; ++j) m(i, j) = c(i, j);
        m(i, i) += ridge_lambda;
    }

    Eigen::VectorXd theta = m.ldlt().solve(b);
    if (!theta.allFinite())
        raise(Errc::singular_system, "normal equations unsolvable even with ridge");

    ARModel model;
    model.p = p;
    model.intercept = theta(0);
    model.coeffs.assign(theta.data() + 1, theta.data() + 1 + p);
    model.trained_at = history.samples.back().first;
    model.cadence_minutes = history.cadence_minutes;
    return model;
}

PredictionWindow predict_window(const ARModel& model, std::span<const double> seed,
                                Timestamp start, int horizon_minutes) {
    if (static_cast<int>(seed.size()) != model.p)
        raise(Errc::bad_seed, "seed has " + std::to_string(seed.size()) + " samples, model needs " +
                                  std::to_string(model.p));

    const int steps = horizon_minutes / model.cadence_minutes;
    PredictionWindow window;
    window.start = start;
    window.cadence_minutes = model.cadence_minutes;
    window.horizon_minutes = horizon_minutes;
    window.values.reserve(static_cast<size_t>(steps));

    // lags[0] = y_{t-1}, shifted as predictions feed back.
    std::vector<double> lags(seed.rbegin(), seed.rend());
    for (int s = 0; s < steps; ++s) {
        double value = model.intercept;
        for (int i = 0; i < model.p; ++i) value += model.coeffs[static_cast<size_t>(i)] * lags[static_cast<size_t>(i)];
        window.values.push_back(value);
        for (int i = model.p - 1; i > 0; --i) lags[static_cast<size_t>(i)] = lags[static_cast<size_t>(i - 1)];
        lags[0] = value;
    }
    return window;
}

namespace {

/// Longest contiguous suffix of the slice: a gap wider than
/// gap_split_factor * cadence discards everything before it.
TemperatureSeries contiguous_suffix(TemperatureSeries series, int gap_split_factor) {
    const auto limit = static_cast<Timestamp>(gap_split_factor) * series.cadence_minutes * 60;
    size_t begin = 0;
    for (size_t i = 1; i < series.samples.size(); ++i)
        if (series.samples[i].first - series.samples[i - 1].first > limit) begin = i;
    if (begin > 0)
        series.samples.erase(series.samples.begin(),
                             series.samples.begin() + static_cast<std::ptrdiff_t>(begin));
    return series;
}

}  // namespace

RetrainOutcome maybe_retrain(ForecasterState& state, const SeriesStore& store,
                             const std::string& camera, const std::vector<int>& rois,
                             Timestamp now, Exec exec) {
    RetrainOutcome outcome;
    const auto interval =
        static_cast<Timestamp>(state.config.retrain_interval_minutes) * kSecondsPerMinute;
    if (state.ever_attempted && now - state.last_trained < interval) return outcome;

    outcome.triggered = true;
    state.ever_attempted = true;
    state.last_trained = now;

    const int p = state.config.order();
    const auto cadence_s = static_cast<Timestamp>(state.config.cadence_minutes) * kSecondsPerMinute;
    const Timestamp t0 = now - static_cast<Timestamp>(state.config.training_hours) * 3600;

    struct RoiResult {
        bool ok = false;
        std::string error;
        ARModel model;
        PredictionWindow window;
    };
    std::vector<RoiResult> results(rois.size());

#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(rois.size()); ++idx) {
        RoiResult& r = results[static_cast<size_t>(idx)];
        const int roi = rois[static_cast<size_t>(idx)];
        try {
            TemperatureSeries slice = contiguous_suffix(store.load_history(camera, roi, t0, now),
                                                        state.config.gap_split_factor);
            r.model = fit(slice, p, state.config.ridge_lambda, Exec::serial);

            std::vector<double> seed(static_cast<size_t>(p));
            const size_t n = slice.samples.size();
            for (int i = 0; i < p; ++i) {
                const auto& s = slice.samples[n - static_cast<size_t>(p) + static_cast<size_t>(i)];
                if (s.first != now - static_cast<Timestamp>(p - i) * cadence_s)
                    raise(Errc::bad_seed, "seed not contiguous up to retrain time");
                seed[static_cast<size_t>(i)] = s.second;
            }
            r.window = predict_window(r.model, seed, now, state.config.horizon_minutes);
            r.window.roi = roi;
            r.ok = true;
        } catch (const Error& e) {
            r.error = e.what();
        }
    }

    for (size_t i = 0; i < rois.size(); ++i) {
        const int roi = rois[i];
        if (results[i].ok) {
            state.models[roi] = std::move(results[i].model);
            state.windows[roi] = std::move(results[i].window);
            outcome.refit_rois.push_back(roi);
        } else {
            // Stale windows no longer cover the current interval; drop them so
            // lookups fall back to persistence instead of old forecasts.
            state.windows.erase(roi);
            outcome.roi_errors.emplace_back(roi, results[i].error);
        }
    }
    return outcome;
}

double lookup_prediction(const ForecasterState& state, int roi, Timestamp ts) {
    const auto it = state.windows.find(roi);
    if (it == state.windows.end() || !it->second.covers(ts))
        raise(Errc::no_prediction, "no window covers " + format_timestamp(ts));
    const PredictionWindow& w = it->second;
    const auto slot = static_cast<size_t>((ts - w.start) / (w.cadence_minutes * kSecondsPerMinute));
    return w.values[slot];
}

}  // namespace tw
