#include "cardioload/time.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "cardioload/error.hpp"

namespace cardioload {

namespace {

bool parse_digits(std::string_view text, std::size_t pos, std::size_t count, int& out)
{
    if (pos + count > text.size()) {
        return false;
    }
    int value = 0;
    for (std::size_t i = pos; i < pos + count; ++i) {
        const char c = text[i];
        if (c < '0' || c > '9') {
            return false;
        }
        value = value * 10 + (c - '0');
    }
    out = value;
    return true;
}

std::optional<Date> make_date(int y, int m, int d)
{
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        return std::nullopt;
    }
    return Date{ymd};
}

constexpr std::array<std::string_view, 7> kWeekdayNames = {
    "sunday", "monday", "tuesday", "wednesday", "thursday", "friday", "saturday"};

} // namespace

std::optional<Date> parse_date(std::string_view text)
{
    int y = 0, m = 0, d = 0;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !parse_digits(text, 0, 4, y) ||
        !parse_digits(text, 5, 2, m) || !parse_digits(text, 8, 2, d)) {
        return std::nullopt;
    }
    return make_date(y, m, d);
}

std::string format_date(Date d)
{
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::optional<Instant> parse_utc_timestamp(std::string_view text)
{
    // YYYY-MM-DDTHH:MM:SS then Z or +00:00
    if (text.size() < 20 || (text[10] != 'T' && text[10] != 't') || text[13] != ':' || text[16] != ':') {
        return std::nullopt;
    }
    const std::string_view suffix = text.substr(19);
    if (suffix != "Z" && suffix != "z" && suffix != "+00:00") {
        return std::nullopt;
    }
    const auto date = parse_date(text.substr(0, 10));
    int hh = 0, mm = 0, ss = 0;
    if (!date || !parse_digits(text, 11, 2, hh) || !parse_digits(text, 14, 2, mm) ||
        !parse_digits(text, 17, 2, ss) || hh > 23 || mm > 59 || ss > 59) {
        return std::nullopt;
    }
    return Instant{*date} + std::chrono::hours{hh} + std::chrono::minutes{mm} + std::chrono::seconds{ss};
}

std::string format_utc_timestamp(Instant t)
{
    const Date day = std::chrono::floor<std::chrono::days>(t);
    const std::chrono::hh_mm_ss<std::chrono::seconds> tod{t - day};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", format_date(day).c_str(),
                  static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                  static_cast<int>(tod.seconds().count()));
    return buf;
}

std::optional<std::chrono::weekday> parse_weekday(std::string_view name)
{
    for (unsigned i = 0; i < kWeekdayNames.size(); ++i) {
        if (kWeekdayNames[i] == name) {
            return std::chrono::weekday{i};
        }
    }
    return std::nullopt;
}

std::string_view weekday_name(std::chrono::weekday wd)
{
    return kWeekdayNames[wd.c_encoding()];
}

Date week_start_of(Date d, std::chrono::weekday first_day)
{
    return d - (std::chrono::weekday{d} - first_day);
}

LocalZone LocalZone::load(const std::string& name)
{
    absl::TimeZone zone;
    if (!absl::LoadTimeZone(name, &zone)) {
        throw Error(ErrorCode::invalid_config, "unknown timezone '" + name + "'");
    }
    return LocalZone(name, zone);
}

LocalZone LocalZone::utc()
{
    return LocalZone("UTC", absl::UTCTimeZone());
}

Date LocalZone::date_of(Minute m) const
{
    const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(m.time_since_epoch()).count();
    const absl::CivilSecond cs = zone_.At(absl::FromUnixSeconds(seconds)).cs;
    return *make_date(static_cast<int>(cs.year()), cs.month(), cs.day());
}

Instant LocalZone::midnight(Date d) const
{
    const std::chrono::year_month_day ymd{d};
    const absl::CivilDay day(static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                             static_cast<unsigned>(ymd.day()));
    const absl::Time t = zone_.At(absl::CivilSecond(day)).pre;
    return Instant{std::chrono::seconds{absl::ToUnixSeconds(t)}};
}

std::string format_number(double value)
{
    if (value == 0.0) {
        return "0";
    }
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

std::optional<double> parse_number(std::string_view text)
{
    if (text.empty()) {
        return std::nullopt;
    }
    if (text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

} // namespace cardioload
