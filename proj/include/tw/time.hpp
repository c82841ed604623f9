#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace tw {

/// Seconds since the Unix epoch, UTC. All timestamps in the system are UTC
/// with second resolution.
using Timestamp = std::int64_t;

constexpr std::int64_t kSecondsPerMinute = 60;
constexpr std::int64_t kSecondsPerDay = 86400;
constexpr int kMinutesPerDay = 1440;

struct CivilDate {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    auto operator<=>(const CivilDate&) const = default;
};

std::int64_t days_from_civil(CivilDate d);
CivilDate civil_from_days(std::int64_t days);

inline Timestamp timestamp_from_civil(CivilDate d) { return days_from_civil(d) * kSecondsPerDay; }

/// 0 = Sunday .. 6 = Saturday.
int weekday_of(CivilDate d);
bool is_weekend(CivilDate d);

CivilDate date_of(Timestamp ts);
Timestamp start_of_day(Timestamp ts);
int minute_of_day(Timestamp ts);

/// Parses the acquisition convention `yyyy-MM-dd HH:MM:SS`.
Timestamp parse_timestamp(std::string_view s);
std::string format_timestamp(Timestamp ts);

/// Filesystem-safe transliteration `yyyy-MM-ddTHH-MM-SS` used for on-disk
/// frame names (spaces and colons are hazardous on common filesystems).
std::string format_timestamp_filename(Timestamp ts);

/// Accepts `d-MMM-yyyy` (e.g. 1-Jan-2022) or ISO `yyyy-MM-dd`.
CivilDate parse_date(std::string_view s);
std::string format_date(CivilDate d);

}  // namespace tw
