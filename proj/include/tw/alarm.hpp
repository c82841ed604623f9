#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tw/extract.hpp"
#include "tw/forecast.hpp"
#include "tw/time.hpp"

namespace tw {

class SeriesStore;

/// One registered/predicted/alarm row per ROI for a single frame.
struct StatusRow {
    double temperature = 0.0;
    double prediction = 0.0;
    bool alarm = false;
    bool suppressed = false;  // prediction was a fallback; alarms withheld
};

struct StatusTable {
    std::string camera;
    Timestamp timestamp = 0;
    std::map<int, StatusRow> rows;  // keyed by ROI id
};

struct AlarmRecord {
    std::string camera;
    int roi = 0;
    Timestamp timestamp = 0;
    double registered = 0.0;
    double predicted = 0.0;
    double deviation = 0.0;
    double threshold = 0.0;
};

/// Supplies a persistence estimate when no prediction window covers a
/// timestamp: value at the same time yesterday, else the last observed value.
using FallbackLookup = std::function<std::optional<double>(int roi, Timestamp ts)>;

FallbackLookup store_fallback(const SeriesStore& store, const std::string& camera);

/// Builds the per-frame status table. The alarm bit is set iff
/// |T - prediction| > threshold (strict; configurable to one-sided). ROIs
/// without a model prediction get the fallback value, alarm = 0, and the
/// suppressed flag: no estimate means no evidence of anomaly.
StatusTable evaluate(const std::string& camera, const TemperatureSample& sample,
                     const ForecasterState& state, double threshold,
                     const FallbackLookup& fallback = {}, bool two_sided = true);

/// Alarm records for exactly the rows with alarm = 1.
std::vector<AlarmRecord> extract_alarms(const StatusTable& table, double threshold);

/// One status document per line, mirroring the per-ROI
/// temperature/prediction/alarm layout of the server tables.
std::string serialize_status(const StatusTable& table);
StatusTable parse_status(const std::string& line);

struct DeliveryReceipt {
    bool ok = false;
    int attempts = 0;
    bool spooled = false;  // delivered to the overflow file instead
};

/// Destination for evaluated tables. Failures are retried with exponential
/// backoff and then spooled to a local overflow file, never dropped.
class AlertSink {
public:
    virtual ~AlertSink() = default;
    DeliveryReceipt emit(const StatusTable& table);

    int max_retries = 3;
    int backoff_ms = 250;
    std::filesystem::path overflow_path;

protected:
    virtual void deliver(const std::string& line) = 0;
};

class FileSink : public AlertSink {
public:
    explicit FileSink(std::filesystem::path path);

protected:
    void deliver(const std::string& line) override;

private:
    std::filesystem::path path_;
};

/// POSTs each document to `url`; any 2xx response is success.
class HttpSink : public AlertSink {
public:
    explicit HttpSink(std::string url);

protected:
    void deliver(const std::string& line) override;

private:
    std::string host_;
    int port_ = 80;
    std::string target_;
};

}  // namespace tw
