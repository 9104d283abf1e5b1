#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace bessu {

/// Start of a one-hour settlement period, UTC.
using Hour = std::chrono::sys_time<std::chrono::hours>;
using Day = std::chrono::sys_days;

/// Inclusive range of calendar days.
struct DateRange {
    Day first;
    Day last;

    bool empty() const { return last < first; }
    long days() const { return empty() ? 0 : (last - first).count() + 1; }
    bool contains(Day d) const { return first <= d && d <= last; }
};

/// Fixed offset between UTC and the reporting clock used to cut calendar days.
struct UtcOffset {
    std::chrono::minutes value{0};

    Day local_day(Hour h) const;
    Hour day_start(Day local) const;
};

/// First and one-past-last hour of a date range under an offset.
std::pair<Hour, Hour> hour_bounds(const DateRange& range, UtcOffset offset = {});
long hours_in(const DateRange& range, UtcOffset offset = {});

std::string format_hour(Hour h);  // 2020-01-01T00:00Z
std::string format_day(Day d);    // 2020-01-01

std::optional<Day> parse_day(std::string_view text);

/// Parses ISO-8601 date-times such as `2020-01-01T00:00Z`, `2020-01-01 00:00:00`,
/// or `2020-01-01T01:00+01:00`; the result is normalised to UTC seconds.
std::optional<std::chrono::sys_seconds> parse_iso_datetime(std::string_view text);

/// Parses with a strftime-style pattern (std::get_time). Text after the pattern is ignored.
std::optional<std::chrono::sys_seconds> parse_datetime(std::string_view text, const std::string& format);

}  // namespace bessu
