#include "tw/time.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "tw/error.hpp"

namespace tw {

// Howard Hinnant's civil-calendar algorithms (proleptic Gregorian).
std::int64_t days_from_civil(CivilDate d) {
    int y = d.year;
    const int m = d.month;
    const int dd = d.day;
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(dd) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

int weekday_of(CivilDate d) {
    // 1970-01-01 was a Thursday.
    const std::int64_t days = days_from_civil(d);
    return static_cast<int>(((days % 7) + 11) % 7);
}

bool is_weekend(CivilDate d) {
    const int wd = weekday_of(d);
    return wd == 0 || wd == 6;
}

CivilDate date_of(Timestamp ts) {
    std::int64_t days = ts / kSecondsPerDay;
    if (ts < 0 && ts % kSecondsPerDay != 0) --days;
    return civil_from_days(days);
}

Timestamp start_of_day(Timestamp ts) { return timestamp_from_civil(date_of(ts)); }

int minute_of_day(Timestamp ts) {
    return static_cast<int>((ts - start_of_day(ts)) / kSecondsPerMinute);
}

namespace {

int parse_int(std::string_view s, size_t pos, size_t len) {
    int value = 0;
    auto [p, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, value);
    if (ec != std::errc() || p != s.data() + pos + len)
        raise(Errc::malformed_row, "bad numeric field in '" + std::string(s) + "'");
    return value;
}

void check_civil(CivilDate d, std::string_view src) {
    static constexpr std::array<int, 13> days_in{0, 31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in[static_cast<size_t>(d.month)])
        raise(Errc::malformed_row, "invalid calendar date '" + std::string(src) + "'");
}

constexpr std::array<std::string_view, 12> kMonthAbbrev = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

}  // namespace

Timestamp parse_timestamp(std::string_view s) {
    // yyyy-MM-dd HH:MM:SS, exactly 19 characters.
    if (s.size() != 19 || s[4] != '-' || s[7] != '-' || s[10] != ' ' || s[13] != ':' || s[16] != ':')
        raise(Errc::malformed_row, "bad timestamp '" + std::string(s) + "'");
    CivilDate d{parse_int(s, 0, 4), parse_int(s, 5, 2), parse_int(s, 8, 2)};
    check_civil(d, s);
    const int hh = parse_int(s, 11, 2);
    const int mm = parse_int(s, 14, 2);
    const int ss = parse_int(s, 17, 2);
    if (hh > 23 || mm > 59 || ss > 59)
        raise(Errc::malformed_row, "bad time of day '" + std::string(s) + "'");
    return timestamp_from_civil(d) + hh * 3600 + mm * 60 + ss;
}

std::string format_timestamp(Timestamp ts) {
    const CivilDate d = date_of(ts);
    const std::int64_t sod = ts - timestamp_from_civil(d);
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:%02d:%02d", d.year, d.month, d.day,
                  static_cast<int>(sod / 3600), static_cast<int>(sod / 60 % 60),
                  static_cast<int>(sod % 60));
    return buf;
}

std::string format_timestamp_filename(Timestamp ts) {
    std::string s = format_timestamp(ts);
    s[10] = 'T';
    s[13] = '-';
    s[16] = '-';
    return s;
}

CivilDate parse_date(std::string_view s) {
    if (s.size() == 10 && s[4] == '-' && s[7] == '-') {
        CivilDate d{parse_int(s, 0, 4), parse_int(s, 5, 2), parse_int(s, 8, 2)};
        check_civil(d, s);
        return d;
    }
    // d-MMM-yyyy with a 1- or 2-digit day.
    const size_t dash1 = s.find('-');
    const size_t dash2 = s.rfind('-');
    if (dash1 == std::string_view::npos || dash2 == dash1 || s.size() - dash2 != 5)
        raise(Errc::malformed_row, "bad date '" + std::string(s) + "'");
    const std::string_view mon = s.substr(dash1 + 1, dash2 - dash1 - 1);
    int month = 0;
    for (size_t i = 0; i < kMonthAbbrev.size(); ++i) {
        if (mon == kMonthAbbrev[i]) {
            month = static_cast<int>(i) + 1;
            break;
        }
    }
    if (month == 0) raise(Errc::malformed_row, "bad month '" + std::string(s) + "'");
    CivilDate d{parse_int(s, dash2 + 1, 4), month, parse_int(s, 0, dash1)};
    check_civil(d, s);
    return d;
}

std::string format_date(CivilDate d) {
    char buf[11];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

}  // namespace tw
