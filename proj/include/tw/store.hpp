#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tw/extract.hpp"
#include "tw/segment.hpp"
#include "tw/time.hpp"

namespace tw {

struct StatusTable;  // alarm.hpp
struct AlarmRecord;
struct ARModel;  // forecast.hpp

/// Append-only persistence rooted at a directory:
///   <root>/<camera>/<roi>.csv          timestamp,temp_c
///   <root>/<camera>/status.log         one status document per line
///   <root>/<camera>/alarms.log         never pruned
///   <root>/<camera>/models.log         one coefficient record per retrain
///   <root>/<camera>/region_sizes.csv   timestamp,class_id,region_id,pixel_count
///
/// Timestamps are stored in the acquisition format `yyyy-MM-dd HH:MM:SS`,
/// UTC; temperatures use shortest round-trip decimal so reads are bit-exact.
/// Single writer per camera; a reopened store resumes where the files end.
class SeriesStore {
public:
    explicit SeriesStore(std::filesystem::path root);

    void set_cadence(const std::string& camera, int cadence_minutes);
    int cadence(const std::string& camera) const;

    /// One row per ROI; rejects non-increasing timestamps per camera.
    void append_sample(const std::string& camera, const TemperatureSample& sample);

    /// Samples with t0 <= t < t1, oldest first.
    TemperatureSeries load_history(const std::string& camera, int roi, Timestamp t0,
                                   Timestamp t1) const;

    std::optional<std::pair<Timestamp, double>> last_before(const std::string& camera, int roi,
                                                            Timestamp ts) const;
    std::optional<Timestamp> last_sample_time(const std::string& camera) const;

    void append_status(const StatusTable& table);
    void append_alarm(const AlarmRecord& record);
    void append_model(const std::string& camera, int roi, const ARModel& model);
    void append_region_sizes(const std::string& camera, const RegionSizeSample& sample);

    /// Keeps only the newest `keep` status records. Alarms are never pruned.
    std::int64_t prune_status_count(const std::string& camera, std::int64_t keep);
    /// Drops status records with timestamp < now - age_seconds.
    std::int64_t prune_status_age(const std::string& camera, Timestamp now,
                                  std::int64_t age_seconds);

    const std::filesystem::path& root() const { return root_; }
    std::filesystem::path camera_dir(const std::string& camera) const { return root_ / camera; }

private:
    struct SeriesCache {
        bool loaded = false;
        std::vector<std::pair<Timestamp, double>> samples;
    };

    SeriesCache& series(const std::string& camera, int roi) const;
    void ensure_camera_dir(const std::string& camera);

    std::filesystem::path root_;
    mutable std::map<std::pair<std::string, int>, SeriesCache> cache_;
    mutable std::map<std::string, Timestamp> last_ts_;
    mutable std::map<std::string, int> cadence_;
};

}  // namespace tw
