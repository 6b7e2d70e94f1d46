#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

#include <absl/time/time.h>

namespace cardioload {

/// UTC instant at minute resolution.
using Minute = std::chrono::sys_time<std::chrono::minutes>;
/// UTC instant at second resolution.
using Instant = std::chrono::sys_seconds;
/// Civil calendar date.
using Date = std::chrono::sys_days;

/// Parses `YYYY-MM-DDTHH:MM:SSZ` (or a `+00:00` suffix). Any other offset is rejected.
std::optional<Instant> parse_utc_timestamp(std::string_view text);
std::string format_utc_timestamp(Instant t);

std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date d);

std::optional<std::chrono::weekday> parse_weekday(std::string_view name);
std::string_view weekday_name(std::chrono::weekday wd);

/// Start of the calendar week containing `d`, weeks beginning on `first_day`.
Date week_start_of(Date d, std::chrono::weekday first_day);

/// IANA timezone used to map UTC minutes onto user-local civil dates.
class LocalZone {
public:
    /// Throws Error(invalid_config) for unknown zone names.
    static LocalZone load(const std::string& name);
    static LocalZone utc();

    Date date_of(Minute m) const;
    /// UTC instant of local midnight starting `d`.
    Instant midnight(Date d) const;
    const std::string& name() const { return name_; }

private:
    LocalZone(std::string name, absl::TimeZone zone) : name_(std::move(name)), zone_(zone) {}

    std::string name_;
    absl::TimeZone zone_;
};

/// Shortest decimal form that round-trips to the same double.
std::string format_number(double value);
std::optional<double> parse_number(std::string_view text);

} // namespace cardioload
