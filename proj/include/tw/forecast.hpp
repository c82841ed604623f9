#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tw/extract.hpp"
#include "tw/parallel.hpp"
#include "tw/time.hpp"

namespace tw {

class SeriesStore;

/// AR(p) model y_t = c + sum_i phi_i y_{t-i} + eps_t. The noise term is a
/// zero-mean fitting residual and is never sampled at prediction time.
struct ARModel {
    int p = 0;
    double intercept = 0.0;
    std::vector<double> coeffs;  // phi_1..phi_p
    Timestamp trained_at = 0;
    int cadence_minutes = 0;
};

struct PredictionWindow {
    int roi = 0;
    Timestamp start = 0;
    int cadence_minutes = 0;
    int horizon_minutes = 0;
    std::vector<double> values;  // horizon / cadence entries, slot i at start + i*cadence

    bool covers(Timestamp ts) const {
        return ts >= start && ts < start + static_cast<Timestamp>(horizon_minutes) * 60;
    }
};

struct ForecastConfig {
    int cadence_minutes = 5;
    int retrain_interval_minutes = 720;
    int horizon_minutes = 720;
    int training_hours = 72;   // history window handed to the fit
    double ridge_lambda = 1e-6;
    int gap_split_factor = 3;  // gaps > factor*cadence split the training slice

    /// Lag span always covers the previous 24 hours.
    int order() const { return kMinutesPerDay / cadence_minutes; }
};

/// Per-camera forecasting state: one model and one live prediction window per
/// ROI. A retrain cycle is attempted at most once per interval regardless of
/// per-ROI success, which is what keeps the model from chasing anomalies.
struct ForecasterState {
    ForecastConfig config;
    std::map<int, ARModel> models;
    std::map<int, PredictionWindow> windows;
    Timestamp last_trained = 0;
    bool ever_attempted = false;
};

struct RetrainOutcome {
    bool triggered = false;
    std::vector<std::pair<int, std::string>> roi_errors;
    std::vector<int> refit_rois;
};

/// Least-squares fit on the lagged design matrix with a small ridge penalty
/// on the lag coefficients (the intercept is unpenalized, so a constant
/// series is reproduced exactly). Requires p + max(2p, 64) contiguous
/// samples and no gaps inside the slice.
ARModel fit(const TemperatureSeries& history, int p, double ridge_lambda = 1e-6,
            Exec exec = Exec::parallel);

/// Recursive multi-step forecast: each step applies the model with zero
/// noise, feeding predictions back as lagged inputs. The seed must hold
/// exactly p contiguous samples ending one cadence step before `start`.
PredictionWindow predict_window(const ARModel& model, std::span<const double> seed,
                                Timestamp start, int horizon_minutes);

/// Refits every ROI and regenerates its window when the retrain interval has
/// elapsed (or on the first call). Per-ROI failures are reported, not thrown;
/// a failed ROI loses its stale window and falls back to persistence until
/// the next successful cycle.
RetrainOutcome maybe_retrain(ForecasterState& state, const SeriesStore& store,
                             const std::string& camera, const std::vector<int>& rois,
                             Timestamp now, Exec exec = Exec::parallel);

/// Value of the window slot containing `ts` (floored to the cadence grid).
/// Throws Errc::no_prediction when no window covers it.
double lookup_prediction(const ForecasterState& state, int roi, Timestamp ts);

}  // namespace tw
