#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace bugforecast {

/// Calendar date, always interpreted as UTC.
using Date = std::chrono::sys_days;
/// Point in time with one-second resolution, UTC.
using Timestamp = std::chrono::sys_seconds;

/// First second of the day.
Timestamp start_of_day(Date d);
/// Last second of the day (23:59:59). Dates used as upper bounds mean this.
Timestamp end_of_day(Date d);

/// Parses `YYYY-MM-DD`.
std::optional<Date> parse_date(std::string_view text);

/// Accepts `YYYY-MM-DD`, `YYYY-MM-DD HH:MM:SS`, ISO-8601 with optional
/// fractional seconds and a `Z`, `+hhmm` or `+hh:mm` offset, and the Jira CSV
/// export style `25/Aug/20 2:27 PM`. The result is normalized to UTC.
std::optional<Timestamp> parse_timestamp(std::string_view text);

std::string format_date(Date d);
/// `YYYY-MM-DDTHH:MM:SSZ`
std::string format_timestamp(Timestamp t);

}  // namespace bugforecast
